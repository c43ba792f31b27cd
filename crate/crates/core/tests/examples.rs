trait Finished {
    fn finished(self) -> bool;
}

impl Finished for () {
    fn finished(self) -> bool {
        true
    }
}

impl<E: std::fmt::Debug> Finished for Result<(), E> {
    fn finished(self) -> bool {
        self.map_err(|e| eprintln!("{e:?}")).is_ok()
    }
}

macro_rules! example {
    ($name:ident) => {
        #[test]
        fn $name() {
            mod inner {
                include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
                pub fn run() -> impl super::Finished {
                    main()
                }
            }
            assert!(inner::run().finished());
        }
    };
}

example!(padic_arithmetic);
example!(cyclotomic_gauss_sums);
example!(characters);
example!(bernoulli_l_values);
example!(hecke_operators);
example!(p_stabilization);
example!(weierstrass_preparation);
example!(local_factor_lift);
example!(imprimitive_invariants);
example!(congruence_transfer);
example!(complex_euler_product);
example!(theta_series);
