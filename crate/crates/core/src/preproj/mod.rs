//! Preprojective algebras of ADE quivers, their central extensions and
//! deformations, and the spherical algebras at a nodal vertex, built as
//! presentations for the engine and checked against closed forms.

pub mod closed;
mod verify;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ri, Rational};
use crate::ncengine::{AlgebraPresentation, Path};
use crate::rootdata::{build_nodal_data, NodalData, RootData};

pub use verify::{
    corner_algebra_dims, cross_check_corner, expected_block_spectrum, orientation_invariance, pi0mu_algebra,
    sample_lambdas, sample_regular_mu, verify_b, verify_block_decomposition, verify_flatness, verify_ideal_powers,
    verify_pi0, verify_pi0mu, verify_pi_truncated, verify_weyl_denominator,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    Pi0,
    Pi0mu,
    PiLambdaMu,
    PiTruncated,
    Bspherical,
    BsphericalDeformed,
}

#[derive(Clone, Debug)]
pub struct PreprojSpec {
    pub root_data: RootData,
    pub mode: Mode,
    /// Weights in fundamental-weight coordinates, `mu_i = (mu, alpha_i)`.
    pub mu: Vec<Rational>,
    pub lambda: Vec<Rational>,
    /// Leg parameters `lambda_{ik}`, one list of length `d_k` per leg.
    pub leg_params: Vec<Vec<Rational>>,
    pub truncation: usize,
}

impl PreprojSpec {
    pub fn new(root_data: RootData, mode: Mode) -> Self {
        let r = root_data.rank();
        PreprojSpec {
            root_data,
            mode,
            mu: vec![Rational::one(); r],
            lambda: vec![Rational::zero(); r],
            leg_params: Vec::new(),
            truncation: 0,
        }
    }

    pub fn with_mu(mut self, mu: Vec<Rational>) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_lambda(mut self, lambda: Vec<Rational>) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_leg_params(mut self, p: Vec<Vec<Rational>>) -> Self {
        self.leg_params = p;
        self
    }

    pub fn with_truncation(mut self, n: usize) -> Self {
        self.truncation = n;
        self
    }
}

pub fn rho(rd: &RootData) -> Vec<Rational> {
    vec![Rational::one(); rd.rank()]
}

pub fn edge_name(k: usize) -> String {
    format!("a{}", k + 1)
}

pub fn star_name(k: usize) -> String {
    format!("a{}*", k + 1)
}

/// Doubled quiver: edges `a_k` in order, then their stars.
fn doubled_quiver(rd: &RootData, name: &str) -> AlgebraPresentation {
    let mut p = AlgebraPresentation::new(name, rd.rank());
    for (k, &(s, t)) in rd.edges.iter().enumerate() {
        p.add_generator(edge_name(k), s, t, 1);
    }
    for (k, &(s, t)) in rd.edges.iter().enumerate() {
        p.add_generator(star_name(k), t, s, 1);
    }
    p
}

/// Terms of `e_v (sum_a [a, a*]) e_v` with paths read left to right.
fn commutator_terms(rd: &RootData, v: usize) -> Vec<(Rational, Path)> {
    let m = rd.edges.len();
    let mut terms = Vec::new();
    for (k, &(s, t)) in rd.edges.iter().enumerate() {
        if s == v {
            terms.push((ri(1), Path { source: v, letters: vec![k, m + k] }));
        }
        if t == v {
            terms.push((ri(-1), Path { source: v, letters: vec![m + k, k] }));
        }
    }
    terms
}

fn check_weight(rd: &RootData, w: &[Rational], what: &str) -> Result<()> {
    if w.len() != rd.rank() {
        return Err(Error::Precondition(format!(
            "{what} has {} entries, rank is {}",
            w.len(),
            rd.rank()
        )));
    }
    Ok(())
}

pub fn presentation_of(spec: &PreprojSpec) -> Result<AlgebraPresentation> {
    let rd = &spec.root_data;
    let r = rd.rank();
    let label = rd.label;
    match spec.mode {
        Mode::Pi0 => {
            let mut p = doubled_quiver(rd, &format!("Pi0({label})"));
            for v in 0..r {
                p.add_relation(commutator_terms(rd, v))?;
            }
            Ok(p)
        }
        Mode::Pi0mu | Mode::PiLambdaMu => {
            check_weight(rd, &spec.mu, "mu")?;
            check_weight(rd, &spec.lambda, "lambda")?;
            if !rd.is_regular(&spec.mu) {
                return Err(Error::Precondition(format!("mu = {} is not regular", fmt_weight(&spec.mu))));
            }
            let deformed = spec.mode == Mode::PiLambdaMu;
            let name = if deformed {
                format!("Pi_lambda^mu({label}; mu={}, lambda={})", fmt_weight(&spec.mu), fmt_weight(&spec.lambda))
            } else {
                format!("Pi0^mu({label}; mu={})", fmt_weight(&spec.mu))
            };
            let mut p = doubled_quiver(rd, &name);
            let z = p.add_vertex_loops("z", 2);
            for v in 0..r {
                let mut terms = commutator_terms(rd, v);
                terms.push((-spec.mu[v].clone(), Path { source: v, letters: vec![z[v]] }));
                if deformed {
                    terms.push((-spec.lambda[v].clone(), Path::idempotent(v)));
                }
                p.add_relation(terms)?;
            }
            p.add_centrality_relations(&z)?;
            p.set_central("z", z);
            Ok(p)
        }
        Mode::PiTruncated => {
            let mut p = doubled_quiver(rd, &format!("Pi({label})"));
            let families: Vec<Vec<usize>> = (0..r).map(|i| p.add_vertex_loops(&format!("x{}", i + 1), 2)).collect();
            for v in 0..r {
                let mut terms = commutator_terms(rd, v);
                terms.push((ri(-1), Path { source: v, letters: vec![families[v][v]] }));
                p.add_relation(terms)?;
            }
            for f in &families {
                p.add_centrality_relations(f)?;
            }
            Ok(p)
        }
        Mode::Bspherical | Mode::BsphericalDeformed => {
            let nd = build_nodal_data(rd)?;
            let params = if spec.mode == Mode::Bspherical {
                nd.leg_orders.iter().map(|&d| vec![Rational::zero(); d]).collect()
            } else {
                spec.leg_params.clone()
            };
            b_presentation(&nd, &params, &format!("B({label})"))
        }
    }
}

/// `prod_i (U - c_i)` expanded as `[(coeff, power)]`.
fn expand_roots(cs: &[Rational]) -> Vec<Rational> {
    // coefficients of U^0..U^d
    let mut poly = vec![Rational::one()];
    for c in cs {
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (k, a) in poly.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * c;
        }
        poly = next;
    }
    poly
}

fn power_path(g: usize, k: usize) -> Path {
    Path { source: 0, letters: vec![g; k] }
}

/// The algebra `B(lambda)` on `U_1..U_m` and a central `z`, all of degree 2.
pub fn b_presentation(nd: &NodalData, params: &[Vec<Rational>], name: &str) -> Result<AlgebraPresentation> {
    if params.len() != nd.num_legs() {
        return Err(Error::Precondition(format!(
            "{} leg parameter lists for {} legs",
            params.len(),
            nd.num_legs()
        )));
    }
    for (k, (ps, &d)) in params.iter().zip(&nd.leg_orders).enumerate() {
        if ps.len() != d {
            return Err(Error::Precondition(format!("leg {} needs {d} parameters, got {}", k + 1, ps.len())));
        }
    }
    let mut p = AlgebraPresentation::new(name, 1);
    let us: Vec<usize> = (0..nd.num_legs()).map(|k| p.add_generator(format!("U{}", k + 1), 0, 0, 2)).collect();
    let z = p.add_generator("z", 0, 0, 2);
    for (k, ps) in params.iter().enumerate() {
        let coeffs = expand_roots(ps);
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (c.clone(), power_path(us[k], e)))
            .collect();
        p.add_relation(terms)?;
    }
    let mut sum: Vec<(Rational, Path)> = us.iter().map(|&u| (ri(1), power_path(u, 1))).collect();
    sum.push((ri(-1), power_path(z, 1)));
    p.add_relation(sum)?;
    p.add_centrality_relations(&[z])?;
    p.set_central("z", vec![z]);
    Ok(p)
}

/// `B(0)` with the extra relation `z = 0`.
pub fn b0_quotient_presentation(nd: &NodalData, name: &str) -> Result<AlgebraPresentation> {
    let zeros: Vec<Vec<Rational>> = nd.leg_orders.iter().map(|&d| vec![Rational::zero(); d]).collect();
    let mut p = b_presentation(nd, &zeros, name)?;
    let z = p.generator_index("z").expect("z");
    p.add_relation(vec![(ri(1), power_path(z, 1))])?;
    Ok(p)
}

/// Abstract presentation of the corner `e_p Pi_0^mu e_p`:
/// `U_k (U_k - x_{i_1}) ... (U_k - x_{i_1} - ... - x_{i_{d_k-1}}) = 0` and
/// `sum_k U_k = -x_p`, with `x_i = mu_i z`.
pub fn corner_presentation(rd: &RootData, mu: &[Rational]) -> Result<AlgebraPresentation> {
    let nd = build_nodal_data(rd)?;
    let mut p = AlgebraPresentation::new(format!("B0^mu({}; mu={})", rd.label, fmt_weight(mu)), 1);
    let us: Vec<usize> = (0..nd.num_legs()).map(|k| p.add_generator(format!("U{}", k + 1), 0, 0, 2)).collect();
    let z = p.add_generator("z", 0, 0, 2);
    for (k, leg) in nd.legs.iter().enumerate() {
        // roots 0, x_{i1}, x_{i1}+x_{i2}, ... as multiples of z
        let mut roots = vec![Rational::zero()];
        let mut acc = Rational::zero();
        for &i in leg {
            acc += &mu[i];
            roots.push(acc.clone());
        }
        // prod_j (U - c_j z) is homogeneous: coefficient of U^e z^{d-e}
        let coeffs = expand_roots(&roots);
        let d = roots.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let mut letters = vec![us[k]; e];
                letters.extend(std::iter::repeat(z).take(d - e));
                (c.clone(), Path { source: 0, letters })
            })
            .collect();
        p.add_relation(terms)?;
    }
    let mut sum: Vec<(Rational, Path)> = us.iter().map(|&u| (ri(1), power_path(u, 1))).collect();
    sum.push((mu[nd.node].clone(), power_path(z, 1)));
    p.add_relation(sum)?;
    p.add_centrality_relations(&[z])?;
    p.set_central("z", vec![z]);
    Ok(p)
}

pub fn fmt_weight(w: &[Rational]) -> String {
    format!("({})", w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

pub fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    Rational::new(n.into(), d.into())
}

pub fn random_weight(rng: &mut ChaCha8Rng, r: usize) -> Vec<Rational> {
    (0..r).map(|_| random_rational(rng, 1000)).collect()
}

const MAX_REDRAWS: usize = 1000;

/// Seeded random regular weight.
pub fn random_regular_weight(rd: &RootData, rng: &mut ChaCha8Rng) -> Result<Vec<Rational>> {
    for _ in 0..MAX_REDRAWS {
        let w = random_weight(rng, rd.rank());
        if rd.is_regular(&w) {
            return Ok(w);
        }
    }
    Err(Error::ResourceLimit("no regular weight drawn".into()))
}

/// `c_alpha = (lambda, alpha) / (mu, alpha)` for every positive root.
pub fn block_eigenvalue_data(rd: &RootData, lambda: &[Rational], mu: &[Rational]) -> Vec<Rational> {
    rd.positive_roots
        .iter()
        .map(|a| RootData::pair_root_weight(a, lambda) / RootData::pair_root_weight(a, mu))
        .collect()
}

pub fn distinct(xs: &[Rational]) -> bool {
    let mut v = xs.to_vec();
    v.sort();
    v.windows(2).all(|w| w[0] != w[1])
}

/// Seeded random `lambda` with pairwise distinct `c_alpha`.
pub fn random_generic_lambda(rd: &RootData, mu: &[Rational], rng: &mut ChaCha8Rng) -> Result<Vec<Rational>> {
    for _ in 0..MAX_REDRAWS {
        let w = random_weight(rng, rd.rank());
        if distinct(&block_eigenvalue_data(rd, &w, mu)) {
            return Ok(w);
        }
    }
    Err(Error::ResourceLimit("no generic lambda drawn".into()))
}

pub fn random_leg_params(nd: &NodalData, rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    nd.leg_orders
        .iter()
        .map(|&d| (0..d).map(|_| random_rational(rng, 1000)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncengine::build_graded_basis;
    use crate::rootdata::root_data;

    #[test]
    fn a2_pi0_relations() {
        let rd = root_data("A2").unwrap();
        let p = presentation_of(&PreprojSpec::new(rd, Mode::Pi0)).unwrap();
        let names: Vec<&str> = p.generators.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["a1", "a1*"]);
        let rels: Vec<String> = p
            .relations
            .iter()
            .map(|r| r.terms.iter().map(|(c, w)| format!("{c}:{}", p.path_string(w))).collect::<Vec<_>>().join("+"))
            .collect();
        assert_eq!(rels, vec!["1:a1 a1*", "-1:a1* a1"]);
    }

    #[test]
    fn a3_b0_relations() {
        let rd = root_data("A3").unwrap();
        let p = presentation_of(&PreprojSpec::new(rd, Mode::Bspherical)).unwrap();
        let t = build_graded_basis(&p, 12).unwrap();
        assert_eq!(t.dims_through(4), vec![1, 0, 2, 0, 1]);
        // U1^2, U2^2, U1 + U2 - z, and the two centrality relations
        assert_eq!(p.relations.len(), 5);
    }

    #[test]
    fn d4_pi0mu_shape() {
        let rd = root_data("D4").unwrap();
        let p = presentation_of(&PreprojSpec::new(rd.clone(), Mode::Pi0mu).with_mu(rho(&rd))).unwrap();
        assert_eq!(p.generators.len(), 3 + 3 + 4);
        assert_eq!(p.relations.len(), 4 + 6);
    }

    #[test]
    fn irregular_mu_rejected() {
        let rd = root_data("A2").unwrap();
        let spec = PreprojSpec::new(rd, Mode::Pi0mu).with_mu(vec![ri(1), ri(-1)]);
        assert!(matches!(presentation_of(&spec), Err(Error::Precondition(_))));
    }

    #[test]
    fn root_expansion() {
        // (U - 1)(U - 2) = U^2 - 3U + 2
        assert_eq!(expand_roots(&[ri(1), ri(2)]), vec![ri(2), ri(-3), ri(1)]);
    }
}
