// Ordinary p-stabilization: g = f - β V_p f is a U_p-eigenform with eigenvalue α.

use std::collections::BTreeMap;

use symsq_iwasawa::characters::DirichletCharacter;
use symsq_iwasawa::cyclotomic::{CycNumber, Embedding};
use symsq_iwasawa::padic::PAdicInt;
use symsq_iwasawa::qexp::{Cyclotomic, QExpansion};

fn main() -> symsq_iwasawa::Result<()> {
    // 11a at p = 7, where a_7 = -2 is a unit
    let a: [(u64, i64); 25] = [
        (2, -2), (3, -1), (5, 1), (7, -2), (11, 1), (13, 4), (17, -2), (19, 0), (23, -1), (29, 0),
        (31, 7), (37, 3), (41, -8), (43, -6), (47, 8), (53, -6), (59, 5), (61, 12), (67, -7),
        (71, -3), (73, 4), (79, -10), (83, -6), (89, 15), (97, -7),
    ];
    let ev: BTreeMap<u64, CycNumber> = a.iter().map(|&(q, x)| (q, CycNumber::from_int(1, x))).collect();
    let f = QExpansion::eigenform(Cyclotomic { order: 1 }, "11a", 2, 11, DirichletCharacter::trivial(1), &ev, 97)?;
    let emb = Embedding::new(7)?;
    let st = f.p_stabilize(&PAdicInt::new(7, 4, -2), &emb)?;
    println!("α = {}, β = {} (mod 7^4), α β = {}", st.alpha, st.beta, &st.alpha * &st.beta);
    let up = st.form.hecke_u(7);
    let expected = st.form.truncate(up.trunc()).scale(&st.alpha);
    println!("U_7 g = α g through q^{}: {}", up.trunc(), up.sub(&expected)?.is_zero());
    Ok(())
}
