use num_traits::{One, Signed};

use super::{Formula, RhsConstant};
use crate::Rational;

/// `x₀ⁿ` with a negative sign shown as `(−1)ⁿ`, e.g. `(−1)ⁿ/4ⁿ` or `(1/5)ⁿ`.
pub fn render_argument(x0: &Rational) -> String {
    let mag = x0.abs();
    if !x0.is_negative() {
        return format!("({mag})ⁿ");
    }
    if mag.numer().is_one() {
        format!("(−1)ⁿ/{}ⁿ", mag.denom())
    } else {
        format!("(−1)ⁿ({mag})ⁿ")
    }
}

/// `q√s/π^k` with the rational denominator moved under the fraction bar.
pub fn render_rhs(rhs: &RhsConstant) -> String {
    let q = rhs.q();
    let sign = if q.is_negative() { "−" } else { "" };
    let num = q.numer().abs();
    let surd = if rhs.radicand().is_one() {
        String::new()
    } else {
        format!("√{}", rhs.radicand())
    };
    let top = if num.is_one() && !surd.is_empty() {
        surd
    } else {
        format!("{num}{surd}")
    };
    let pi = if rhs.pi_power() == 3 { "π³" } else { "π²" };
    if q.denom().is_one() {
        format!("{sign}{top}/{pi}")
    } else {
        format!("{sign}{top}/({}{pi})", q.denom())
    }
}

/// One-line display, e.g. `Σ b_n (64n²−16n−15) (1/5)ⁿ = 50/π²`.
pub fn render_formula(f: &Formula) -> String {
    let letter = if f.sequence.is_transformed() {
        'b'
    } else {
        'a'
    };
    format!(
        "Σ {letter}_n ({}) {} = {}",
        f.poly,
        render_argument(&f.argument),
        render_rhs(&f.rhs)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;

    #[test]
    fn displays() {
        let c = builtin_catalog();
        assert_eq!(
            render_formula(c.get("id1-binomial").unwrap()),
            "Σ b_n (64n²−16n−15) (1/5)ⁿ = 50/π²"
        );
        assert_eq!(
            render_formula(c.get("id2-binomial").unwrap()),
            "Σ b_n (4194304n²+909312n+61633) (1/1025)ⁿ = 5253125/(8π²)"
        );
        assert_eq!(
            render_argument(&c.get("id9-monster").unwrap().argument),
            "(−1)ⁿ/4194303ⁿ"
        );
        assert_eq!(
            render_formula(c.get("id1").unwrap()),
            "Σ a_n (20n²+8n+1) (−1)ⁿ/4ⁿ = 8/π²"
        );
        assert_eq!(render_rhs(&c.get("id9").unwrap().rhs), "64√2/π²");
        assert_eq!(render_rhs(&c.get("gourevich").unwrap().rhs), "32/π³");
        assert_eq!(
            render_argument(&c.get("id1-ballot").unwrap().argument),
            "(−1)ⁿ(4096/16777217)ⁿ"
        );
    }
}
