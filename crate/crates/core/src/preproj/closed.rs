//! Closed-form matrix Hilbert series in the variable `t`, and the polynomial
//! identities relating them.

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, PolyMatrix, Rational};
use crate::report::{CheckRecord, RecordBuilder};
use crate::rootdata::RootData;

/// `1 - C t + t^2`.
pub fn quadratic(rd: &RootData) -> PolyMatrix {
    let n = rd.rank();
    let id = PolyMatrix::identity(n);
    let ct = PolyMatrix::from_constant(&rd.adjacency_matrix(), 1);
    let t2 = PolyMatrix::scalar(n, &LaurentPoly::var_pow(2));
    &(&id - &ct) + &t2
}

/// `[n]_{t^2} = 1 + t^2 + ... + t^{2(n-1)}`.
pub fn qint_t2(n: usize) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for k in 0..n {
        p.add_term(2 * k as i64, Rational::from_integer(1.into()));
    }
    p
}


fn inverse_series(rd: &RootData, max: i64) -> PolyMatrix {
    quadratic(rd)
        .series_inverse_truncated(max)
        .expect("constant term is the identity")
}

/// `H_0(t) = (1 + P t^h) / (1 - C t + t^2)`, certified to be a polynomial
/// of degree `h - 2`.
pub fn h0(rd: &RootData) -> Result<PolyMatrix> {
    let h = rd.h() as i64;
    let n = rd.rank();
    let numer = &PolyMatrix::identity(n) + &PolyMatrix::from_constant(&rd.dual_perm_matrix(), h);
    let cand = (&inverse_series(rd, h - 2) * &numer).truncate(h - 2);
    if &quadratic(rd) * &cand != numer {
        return Err(Error::Precondition(format!("(1 + P t^h)/(1 - Ct + t^2) is not a polynomial for {}", rd.label)));
    }
    Ok(cand)
}

/// `H~(t) = [h]_{t^2} / (1 - C t + t^2)`, certified polynomial of degree
/// `2h - 4`.
pub fn htilde(rd: &RootData) -> Result<PolyMatrix> {
    let h = rd.h();
    let n = rd.rank();
    let numer = PolyMatrix::scalar(n, &qint_t2(h));
    let top = 2 * h as i64 - 4;
    let cand = (&inverse_series(rd, top) * &numer).truncate(top);
    if &quadratic(rd) * &cand != numer {
        return Err(Error::Precondition(format!("[h]/(1 - Ct + t^2) is not a polynomial for {}", rd.label)));
    }
    Ok(cand)
}

/// Power series `(1 - t^{2h}) / ((1 - t^2)^r (1 - C t + t^2))` through `t^max`.
pub fn pi_series(rd: &RootData, max: usize) -> PolyMatrix {
    let r = rd.rank();
    let max = max as i64;
    let geo = qint_t2(max as usize / 2 + 1);
    let mut scalar = LaurentPoly::one();
    for _ in 0..r {
        scalar = (&scalar * &geo).truncate(max);
    }
    let mut one_minus = LaurentPoly::one();
    one_minus.add_term(2 * rd.h() as i64, Rational::from_integer((-1).into()));
    scalar = (&scalar * &one_minus).truncate(max);
    (&inverse_series(rd, max) * &PolyMatrix::scalar(r, &scalar)).truncate(max)
}

/// Two-variable series: `H_k(t)`, the coefficient of `u^k` in
/// `(H_0(t) - u t^h P H_0(u t)) / (1 - u t^2)`.
pub fn ideal_power_series(rd: &RootData, k: usize) -> Result<PolyMatrix> {
    let h0 = h0(rd)?;
    let h = rd.h() as i64;
    let p = PolyMatrix::from_constant(&rd.dual_perm_matrix(), 0);
    let mut out = h0.shift(2 * k as i64);
    for n in 0..k as i64 {
        // u^{n+1} t^{h+n} P H0_n times u^m t^{2m}, n + 1 + m = k
        let m = k as i64 - 1 - n;
        let coeff = PolyMatrix::from_constant(&h0.coeff_matrix(n), h + n + 2 * m);
        out = &out - &(&p * &coeff);
    }
    Ok(out)
}

/// Pure polynomial identities among the closed forms (no engine).
pub fn hilbert_identities(rd: &RootData) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("hilbert-identity/{}", rd.label),
        "Closed-form matrix Hilbert polynomials satisfy their defining identities",
        "preprojective/hilbert-identities",
    );
    b.input("type", rd.label.to_string());
    let (h0m, ht) = match (h0(rd), htilde(rd)) {
        (Ok(a), Ok(c)) => (a, c),
        (Err(e), _) | (_, Err(e)) => {
            b.error("polynomiality", e);
            return b.finish();
        }
    };
    let h = rd.h();
    let r = rd.rank();
    let one_minus_t2 = LaurentPoly::from_coeffs(0, &[1, 0, -1]);
    let mut one_minus_t2h = LaurentPoly::one();
    one_minus_t2h.add_term(2 * h as i64, Rational::from_integer((-1).into()));
    let lhs = (&quadratic(rd) * &ht).mul_scalar_poly(&one_minus_t2);
    b.eq("Htilde*(1-Ct+t^2)*(1-t^2) == (1-t^2h)I", lhs == PolyMatrix::scalar(r, &one_minus_t2h), true);

    let diff = &h0m - &h0m.invert_var().shift(2 * h as i64 - 2);
    let via_h0 = diff.div_exact_scalar(&one_minus_t2);
    b.eq("Htilde == (H0(t) - t^(2h-2) H0(1/t))/(1-t^2)", via_h0.as_ref() == Some(&ht), true);

    let p = PolyMatrix::from_constant(&rd.dual_perm_matrix(), 0);
    let mirrored = &(&p * &ht.invert_var().shift(2 * h as i64 - 4)) * &p;
    b.eq("Htilde(t) == t^(2h-4) P Htilde(1/t) P", mirrored == ht, true);

    let dim0 = h0m.total();
    b.eq("dim Pi0", dim0.to_string(), (h * (h + 1) * r / 6).to_string());
    let dimmu = ht.total();
    b.eq("dim Pi0^mu", dimmu.to_string(), (h * h * (h + 1) * r / 12).to_string());
    b.eq(
        "dim Pi0^mu == h/2 dim Pi0",
        (dimmu.clone() * Rational::from_integer(2.into())).to_string(),
        (dim0 * Rational::from_integer((h as i64).into())).to_string(),
    );
    b.eq("deg H0", h0m.max_degree(), Some(h as i64 - 2));
    b.eq("deg Htilde", ht.max_degree(), Some(2 * h as i64 - 4));
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{root_data, TypeLabel};

    #[test]
    fn a2_closed_forms() {
        let rd = root_data("A2").unwrap();
        let h = h0(&rd).unwrap();
        // Pi0(A2): e1, e2 in degree 0 and a, a* in degree 1
        assert_eq!(h.coeff_matrix(0), crate::exact::QMatrix::identity(2));
        assert_eq!(h.coeff_matrix(1), rd.adjacency_matrix());
        assert_eq!(h.total(), Rational::from_integer(4.into()));
        assert_eq!(htilde(&rd).unwrap().total(), Rational::from_integer(6.into()));
    }

    #[test]
    fn identities_hold_for_every_standard_type() {
        for label in TypeLabel::standard_list() {
            let rec = hilbert_identities(&crate::rootdata::build_root_data(label));
            assert!(rec.pass, "{label}: {:?}", rec.failed_items());
        }
    }

    #[test]
    fn pi_series_low_degrees() {
        // degree 0 is I and degree 1 is C
        let rd = root_data("A3").unwrap();
        let s = pi_series(&rd, 6);
        assert_eq!(s.coeff_matrix(0), crate::exact::QMatrix::identity(3));
        assert_eq!(s.coeff_matrix(1), rd.adjacency_matrix());
    }

    #[test]
    fn ideal_powers_sum_to_htilde() {
        let rd = root_data("D4").unwrap();
        let mut acc = PolyMatrix::zeros(4);
        for k in 0..rd.h() {
            acc = &acc + &ideal_power_series(&rd, k).unwrap();
        }
        assert_eq!(acc, htilde(&rd).unwrap());
        assert!(ideal_power_series(&rd, rd.h() - 1).unwrap().is_zero());
    }
}
