// Weight one-half theta series of even characters.

use symsq_iwasawa::characters::DirichletCharacter;
use symsq_iwasawa::qexp::{theta, CoefficientRing};

fn main() -> symsq_iwasawa::Result<()> {
    for chi in DirichletCharacter::all(5).into_iter().filter(|c| c.is_even()) {
        let th = theta(&chi, 30)?;
        let nonzero: Vec<String> = th
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !th.ring().is_zero(c))
            .map(|(n, c)| format!("{}q^{n}", th.ring().render(c)))
            .collect();
        println!("θ for images {:?}, level {}: {}", chi.images(), th.level(), nonzero.join(" + "));
    }
    Ok(())
}
