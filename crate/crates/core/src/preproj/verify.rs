use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::closed::{h0, htilde, ideal_power_series, pi_series, qint_t2};
use super::{
    b0_quotient_presentation, block_eigenvalue_data, corner_presentation, distinct, fmt_weight, presentation_of,
    random_generic_lambda, random_leg_params, random_regular_weight, rho, Mode, PreprojSpec,
};
use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, PolyMatrix, QMatrix, Rational, Rationals, SparseVec};
use crate::ncengine::structure::{in_span, span_rank};
use crate::ncengine::{
    build_filtered_basis, build_graded_basis_cached, charpoly_of_element, frobenius_check, socle, trace_form_rank,
    word_span_oracle, AlgebraPresentation, FiniteAlgebra, GradedBasisTable, Path, QVec, TableCache,
};
use crate::report::{CheckRecord, RecordBuilder};
use crate::rootdata::{build_nodal_data, RootData};

fn graded(p: &AlgebraPresentation, max_degree: usize) -> Result<GradedBasisTable> {
    build_graded_basis_cached(p, max_degree, TableCache::from_env().as_ref())
}

fn trimmed(mut v: Vec<usize>) -> Vec<usize> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn weight_json(w: &[Rational]) -> Vec<String> {
    w.iter().map(|c| c.to_string()).collect()
}

fn poly_matrix_json(m: &PolyMatrix) -> Vec<Vec<String>> {
    let n = m.size();
    (0..n).map(|i| (0..n).map(|j| m.get(i, j).display_with("t")).collect()).collect()
}

/// First degree at which two matrix polynomials differ.
fn first_difference(a: &PolyMatrix, b: &PolyMatrix) -> Option<i64> {
    let hi = a.max_degree().unwrap_or(0).max(b.max_degree().unwrap_or(0));
    let lo = a.min_degree().unwrap_or(0).min(b.min_degree().unwrap_or(0));
    (lo..=hi).find(|&k| a.coeff_matrix(k) != b.coeff_matrix(k))
}

fn hilbert_item(b: &mut RecordBuilder, name: &str, computed: &PolyMatrix, expected: &PolyMatrix) -> bool {
    let diff = first_difference(computed, expected);
    b.item(
        name,
        json!({ "matrix": poly_matrix_json(computed), "first_difference_degree": diff }),
        json!({ "matrix": poly_matrix_json(expected) }),
        diff.is_none(),
    )
}

/// `Pi_0`: dimension, matrix Hilbert polynomial, top degree, and (optionally)
/// agreement with the word-span oracle.
pub fn verify_pi0(rd: &RootData, with_oracle: bool) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("pi0/{}", rd.label),
        "Pi0 has dimension h(h+1)r/6 and matrix Hilbert polynomial (1+Pt^h)/(1-Ct+t^2)",
        "preprojective/pi0-hilbert",
    );
    b.input("type", rd.label.to_string());
    let (h, r) = (rd.h(), rd.rank());
    let res = (|| -> Result<()> {
        let p = presentation_of(&PreprojSpec::new(rd.clone(), Mode::Pi0))?;
        let t = graded(&p, 2 * h)?;
        b.eq("terminated", t.terminated, true);
        b.eq("dim", t.total_dim(), h * (h + 1) * r / 6);
        b.eq("top_degree", t.top_degree(), h - 2);
        hilbert_item(&mut b, "hilbert_matrix", &t.hilbert_matrix(), &h0(rd)?);
        if with_oracle {
            let oracle = word_span_oracle(&p, h)?;
            b.eq("oracle_dims", &oracle, t.dims_through(h));
        }
        Ok(())
    })();
    if let Err(e) = res {
        b.error("engine", e);
    }
    b.finish()
}

pub fn pi0mu_algebra(rd: &RootData, mu: &[Rational]) -> Result<(GradedBasisTable, FiniteAlgebra)> {
    let p = presentation_of(&PreprojSpec::new(rd.clone(), Mode::Pi0mu).with_mu(mu.to_vec()))?;
    let t = graded(&p, 2 * rd.h() + 4)?;
    let a = FiniteAlgebra::from_graded(&t);
    Ok((t, a))
}

/// `Pi_0^mu`: Hilbert polynomial, dimension, nilpotency of `z`, socle and the
/// graded Frobenius pairing.
pub fn verify_pi0mu(rd: &RootData, mu: &[Rational], seed: Option<u64>) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("pi0mu/{}", rd.label),
        "Pi0^mu: Hilbert polynomial [h]_{t^2}/(1-Ct+t^2), dim h^2(h+1)r/12, z^(h-1)=0, socle z^(h-2)R, Frobenius of degree 2h-4",
        "central-extension/pi0mu",
    );
    b.input("type", rd.label.to_string()).input("mu", weight_json(mu));
    if let Some(s) = seed {
        b.seed(s);
    }
    let (h, r) = (rd.h(), rd.rank());
    let res = (|| -> Result<()> {
        let (t, a) = pi0mu_algebra(rd, mu)?;
        b.eq("terminated", t.terminated, true);
        hilbert_item(&mut b, "hilbert_matrix", &t.hilbert_matrix(), &htilde(rd)?);
        b.eq("dim", a.dim(), h * h * (h + 1) * r / 12);
        let z = a.central_element().expect("z");
        let top = a.pow(&z, (h - 2) as u32);
        b.eq("z^(h-1) == 0", a.mul(&top, &z).is_empty(), true);
        b.eq("z^(h-2) != 0", !top.is_empty(), true);
        let soc = socle(&a);
        let zr: Vec<QVec> = (0..r).map(|v| a.mul(&top, &a.idempotent(v))).collect();
        let n = a.dim();
        b.eq("socle_dim", soc.len(), r);
        let joint = span_rank(&[soc.clone(), zr.clone()].concat(), n);
        b.eq("socle == z^(h-2)R", soc.len() == r && span_rank(&zr, n) == r && joint == r, true);
        match frobenius_check(&a, 2 * h - 4) {
            Ok(f) => {
                b.item(
                    "frobenius",
                    json!({ "pass": f.pass, "degree_pass": f.degree_pass, "permutation": f.permutation }),
                    json!({ "pass": true, "top_degree": 2 * h - 4 }),
                    f.pass,
                );
            }
            Err(e) => {
                b.error("frobenius", e);
            }
        }
        Ok(())
    })();
    if let Err(e) = res {
        b.error("engine", e);
    }
    b.finish()
}

/// Filtered dimension and associated graded of `Pi_lambda^mu` for sampled
/// `lambda`, compared with `Pi_0^mu`.
pub fn verify_flatness(rd: &RootData, mu: &[Rational], lambdas: &[Vec<Rational>], seed: Option<u64>) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("flatness/{}", rd.label),
        "Pi_lambda^mu has the dimension of Pi0^mu and gr Pi_lambda^mu has the graded dimensions of Pi0^mu",
        "central-extension/flatness",
    );
    b.input("type", rd.label.to_string()).input("mu", weight_json(mu));
    b.input("lambdas", lambdas.iter().map(|l| weight_json(l)).collect::<Vec<_>>());
    if let Some(s) = seed {
        b.seed(s);
    }
    b.note("consequence-level check of freeness: constant fiber dimension over sampled lambda");
    let res = (|| -> Result<()> {
        let (t0, _) = pi0mu_algebra(rd, mu)?;
        let dims0 = trimmed(t0.dims());
        for (i, lam) in lambdas.iter().enumerate() {
            let spec = PreprojSpec::new(rd.clone(), Mode::PiLambdaMu).with_mu(mu.to_vec()).with_lambda(lam.clone());
            let p = presentation_of(&spec)?;
            let f = build_filtered_basis(&p, 2 * rd.h() + 10)?;
            b.eq(&format!("lambda[{i}].dim"), f.total_dim, t0.total_dim());
            b.eq(&format!("lambda[{i}].gr_dims"), trimmed(f.gr_dims.clone()), &dims0);
        }
        Ok(())
    })();
    if let Err(e) = res {
        b.error("engine", e);
    }
    b.finish()
}

/// Expected spectrum of `z` on `Pi_lambda^mu`: eigenvalue `-(lambda,alpha)/(mu,alpha)`
/// with multiplicity `(alpha, rho)^2` for each positive root.
pub fn expected_block_spectrum(rd: &RootData, lambda: &[Rational], mu: &[Rational]) -> Vec<(Rational, usize)> {
    let cs = block_eigenvalue_data(rd, lambda, mu);
    let mut out: BTreeMap<Rational, usize> = BTreeMap::new();
    for (c, a) in cs.iter().zip(&rd.positive_roots) {
        let ht = RootData::height(a) as usize;
        *out.entry(-c.clone()).or_default() += ht * ht;
    }
    out.into_iter().collect()
}

/// Spectrum of `z` on the regular representation of `Pi_lambda^rho` and
/// semisimplicity through the trace form.
pub fn verify_block_decomposition(rd: &RootData, lambda: &[Rational], seed: Option<u64>) -> Result<CheckRecord> {
    let mu = rho(rd);
    let cs = block_eigenvalue_data(rd, lambda, &mu);
    if !distinct(&cs) {
        return Err(Error::Precondition(format!(
            "lambda = {} is not generic: (lambda,alpha)/(rho,alpha) values {:?} repeat",
            fmt_weight(lambda),
            weight_json(&cs)
        )));
    }
    let mut b = RecordBuilder::new(
        format!("blocks/{}", rd.label),
        "z on Pi_lambda^rho is semisimple with one Mat_(alpha,rho) block per positive root, eigenvalue -(lambda,alpha)/(rho,alpha)",
        "central-extension/block-decomposition",
    );
    b.input("type", rd.label.to_string()).input("lambda", weight_json(lambda));
    if let Some(s) = seed {
        b.seed(s);
    }
    b.note("block at alpha is Pi_{lambda - c mu} with c = (lambda,alpha)/(mu,alpha); the defining relation puts z = -c there");
    let spec = PreprojSpec::new(rd.clone(), Mode::PiLambdaMu).with_mu(mu).with_lambda(lambda.to_vec());
    let p = presentation_of(&spec)?;
    let f = build_filtered_basis(&p, 2 * rd.h() + 10)?;
    let a = &f.algebra;
    let z = a.central_element().expect("z");
    let cp = charpoly_of_element(a, &z);
    let fmt = |v: &[(Rational, usize)]| v.iter().map(|(r, k)| json!([r.to_string(), k])).collect::<Vec<_>>();
    let expected = expected_block_spectrum(rd, lambda, &spec.mu);
    let splits = cp.factorization.splits;
    b.item(
        "charpoly_roots",
        json!({ "roots": fmt(&cp.factorization.root_values), "splits": splits }),
        json!({ "roots": fmt(&expected), "splits": true }),
        splits && cp.factorization.root_values == expected,
    );
    b.eq("dim", a.dim(), {
        let h = rd.h();
        h * h * (h + 1) * rd.rank() / 12
    });
    b.eq("trace_form_rank", trace_form_rank(a), a.dim());
    Ok(b.finish())
}

/// Truncated `Pi` over `C[x_1..x_r]` against its Hilbert series.
pub fn verify_pi_truncated(rd: &RootData, max_degree: usize) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("pi-truncated/{}", rd.label),
        "Pi over C[x] has matrix Hilbert series (1-t^2h)/((1-t^2)^r(1-Ct+t^2))",
        "preprojective/pi-hilbert-series",
    );
    b.input("type", rd.label.to_string()).input("max_degree", max_degree);
    let res = (|| -> Result<()> {
        let p = presentation_of(&PreprojSpec::new(rd.clone(), Mode::PiTruncated))?;
        let t = graded(&p, max_degree)?;
        let computed = t.hilbert_matrix().truncate(max_degree as i64);
        hilbert_item(&mut b, "hilbert_series", &computed, &pi_series(rd, max_degree));
        Ok(())
    })();
    if let Err(e) = res {
        b.error("engine", e);
    }
    b.finish()
}

type Monomial = Vec<u32>;

fn weyl_denominator(rd: &RootData, roots: &[Vec<i64>]) -> BTreeMap<Monomial, Rational> {
    let r = rd.rank();
    let mut poly: BTreeMap<Monomial, Rational> = BTreeMap::new();
    poly.insert(vec![0; r], Rational::one());
    for a in roots {
        let mut next: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &poly {
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                let mut m2 = m.clone();
                m2[i] += 1;
                *next.entry(m2).or_insert_with(Rational::zero) += c * Rational::from_integer(ai.into());
            }
        }
        next.retain(|_, c| !c.is_zero());
        poly = next;
    }
    poly
}

fn x_normal_form(
    p: &AlgebraPresentation,
    t: &GradedBasisTable,
    poly: &BTreeMap<Monomial, Rational>,
    v: usize,
) -> Result<QVec> {
    let mut acc = QVec::new();
    for (m, c) in poly {
        let mut letters = Vec::new();
        for (i, &e) in m.iter().enumerate() {
            let g = p
                .generator_index(&format!("x{}@{}", i + 1, v + 1))
                .ok_or_else(|| Error::InvalidPresentation("missing x loop".into()))?;
            letters.extend(std::iter::repeat(g).take(e as usize));
        }
        let (_, nf) = t.normal_form(&Path { source: v, letters });
        acc = acc.axpy(&Rationals, c, &nf);
    }
    Ok(acc)
}

/// `delta(x) e_i = 0` in `Pi` for the rational Weyl denominator, while the
/// single factor `x_1 e_i` survives.
pub fn verify_weyl_denominator(rd: &RootData) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("weyl-denominator/{}", rd.label),
        "The rational Weyl denominator prod_(alpha>0) (alpha,x) vanishes in Pi",
        "central-extension/weyl-denominator",
    );
    b.input("type", rd.label.to_string());
    let res = (|| -> Result<()> {
        let n_pos = rd.positive_roots.len();
        let p = presentation_of(&PreprojSpec::new(rd.clone(), Mode::PiTruncated))?;
        let t = graded(&p, 2 * n_pos + 2)?;
        let delta = weyl_denominator(rd, &rd.positive_roots);
        let x1 = weyl_denominator(rd, &rd.positive_roots[..1]);
        for v in 0..rd.rank() {
            let nf = x_normal_form(&p, &t, &delta, v)?;
            b.eq(&format!("delta(x) e{} == 0", v + 1), nf.is_empty(), true);
            let nf1 = x_normal_form(&p, &t, &x1, v)?;
            b.eq(&format!("x1 e{} != 0", v + 1), !nf1.is_empty(), true);
        }
        Ok(())
    })();
    if let Err(e) = res {
        b.error("engine", e);
    }
    b.finish()
}

/// Per-degree, per-corner dimensions of `z^k A`.
fn ideal_power_dims(a: &FiniteAlgebra, z: &QVec, k: usize, top: usize) -> Vec<Vec<Vec<usize>>> {
    let r = a.num_vertices;
    let n = a.dim();
    let zk = a.pow(z, k as u32);
    let mut out = vec![vec![vec![0; r]; r]; top + 1];
    let images: Vec<QVec> = (0..n).map(|j| a.mul(&zk, &SparseVec::unit(&Rationals, j))).collect();
    for (deg, slot) in out.iter_mut().enumerate() {
        if deg < 2 * k {
            continue;
        }
        for (s, row) in slot.iter_mut().enumerate() {
            for (t, cell) in row.iter_mut().enumerate() {
                let vs: Vec<QVec> = (0..n)
                    .filter(|&j| {
                        let bj = &a.basis[j];
                        bj.degree + 2 * k == deg && bj.source == s && bj.target == t
                    })
                    .map(|j| images[j].clone())
                    .collect();
                *cell = if vs.is_empty() { 0 } else { span_rank(&vs, n) };
            }
        }
    }
    out
}

/// Successive quotients `N^k / N^(k+1)` of the ideal `N = (z)` in `Pi_0^rho`
/// against the two-variable generating function, and maximal rank of `z`.
pub fn verify_ideal_powers(rd: &RootData) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("ideal-powers/{}", rd.label),
        "sum_k H_k(t) u^k = (H0(t) - u t^h P H0(ut))/(1 - u t^2) and z has maximal rank in every degree",
        "filtration/ideal-powers",
    );
    b.input("type", rd.label.to_string()).input("mu", "rho");
    let res = (|| -> Result<()> {
        let (h, r) = (rd.h(), rd.rank());
        let (_, a) = pi0mu_algebra(rd, &rho(rd))?;
        let z = a.central_element().expect("z");
        let top = 2 * h - 4;
        let per_k: Vec<Vec<Vec<Vec<usize>>>> = (0..=h).map(|k| ideal_power_dims(&a, &z, k, top)).collect();
        for k in 0..h {
            let mut m = PolyMatrix::zeros(r);
            for deg in 0..=top {
                for s in 0..r {
                    for t in 0..r {
                        let d = per_k[k][deg][s][t] - per_k[k + 1][deg][s][t];
                        if d > 0 {
                            let mut e = m.get(s, t).clone();
                            e.add_term(deg as i64, Rational::from_integer(d.into()));
                            m.set(s, t, e);
                        }
                    }
                }
            }
            hilbert_item(&mut b, &format!("H_{k}"), &m, &ideal_power_series(rd, k)?);
        }
        let dims = a.degree_dims();
        let lz = a.left_matrix(&z);
        let mut ranks = Vec::new();
        let mut ok = true;
        for j in 0..=top.saturating_sub(2) {
            let cols: Vec<usize> = (0..a.dim()).filter(|&i| a.basis[i].degree == j).collect();
            let rows: Vec<usize> = (0..a.dim()).filter(|&i| a.basis[i].degree == j + 2).collect();
            let mut m = QMatrix::zeros(rows.len(), cols.len());
            for (x, &ri) in rows.iter().enumerate() {
                for (y, &ci) in cols.iter().enumerate() {
                    m[(x, y)] = lz[(ri, ci)].clone();
                }
            }
            let rank = if rows.is_empty() || cols.is_empty() { 0 } else { m.rank() };
            ok &= rank == dims[j].min(dims.get(j + 2).copied().unwrap_or(0));
            ranks.push(rank);
        }
        let expected: Vec<usize> = (0..=top.saturating_sub(2))
            .map(|j| dims[j].min(dims.get(j + 2).copied().unwrap_or(0)))
            .collect();
        b.item("z_rank_by_degree", &ranks, &expected, ok);
        Ok(())
    })();
    if let Err(e) = res {
        b.error("engine", e);
    }
    b.finish()
}

fn series_json(p: &LaurentPoly) -> String {
    p.display_with("t")
}

/// Spherical algebras at the nodal vertex: `B(0)`, `B_0 = B(0)/(z)` and the
/// deformations `B(lambda)`.
pub fn verify_b(rd: &RootData, num_lambdas: usize, seed: u64) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("spherical/{}", rd.label),
        "B(0) has Hilbert polynomial [h/2][q1][q2], z^(h-1)=0, socle z^(h-2); B0 has [q1][q2]; gr B(lambda) = B(0)",
        "spherical/b-algebras",
    );
    b.input("type", rd.label.to_string()).input("num_lambdas", num_lambdas).seed(seed);
    let res = (|| -> Result<()> {
        let nd = build_nodal_data(rd)?;
        let h = rd.h();
        b.input("legs", &nd.leg_orders).input("q", (nd.q1, nd.q2));
        let p0 = presentation_of(&PreprojSpec::new(rd.clone(), Mode::Bspherical))?;
        let t = graded(&p0, 2 * h + 4)?;
        let e = &(&qint_t2(h / 2) * &qint_t2(nd.q1)) * &qint_t2(nd.q2);
        let hs = t.hilbert_series();
        b.item("hilbert B(0)", series_json(&hs), series_json(&e), hs == e);
        b.eq("dim B(0)", t.total_dim(), h * nd.q1 * nd.q2 / 2);
        let a = FiniteAlgebra::from_graded(&t);
        let z = a.central_element().expect("z");
        let top = a.pow(&z, (h - 2) as u32);
        b.eq("z^(h-1) == 0", a.mul(&top, &z).is_empty(), true);
        b.eq("z^(h-2) != 0", !top.is_empty(), true);
        let soc = socle(&a);
        b.eq("socle == span z^(h-2)", soc.len() == 1 && in_span(&soc, &top, a.dim()), true);

        let pq = b0_quotient_presentation(&nd, &format!("B0({})", rd.label))?;
        let tq = graded(&pq, 2 * h + 4)?;
        let eq = &qint_t2(nd.q1) * &qint_t2(nd.q2);
        let hq = tq.hilbert_series();
        b.item("hilbert B0", series_json(&hq), series_json(&eq), hq == eq);
        b.eq("dim B0 == |G|", tq.total_dim(), nd.group_order());

        let dims0 = trimmed(t.dims());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..num_lambdas {
            let params = random_leg_params(&nd, &mut rng);
            let spec = PreprojSpec::new(rd.clone(), Mode::BsphericalDeformed).with_leg_params(params.clone());
            let p = presentation_of(&spec)?;
            let f = build_filtered_basis(&p, 2 * h + 12)?;
            b.eq(&format!("lambda[{i}].dim"), f.total_dim, t.total_dim());
            b.eq(&format!("lambda[{i}].gr_dims"), trimmed(f.gr_dims.clone()), &dims0);
        }
        Ok(())
    })();
    if let Err(e) = res {
        b.error("engine", e);
    }
    b.finish()
}

/// Per-degree dimensions of the corner `e_v A e_v`.
pub fn corner_algebra_dims(t: &GradedBasisTable, v: usize) -> Vec<usize> {
    trimmed((0..t.components.len()).map(|n| t.vertex_dims(n)[v][v]).collect())
}

/// The nodal corner of `Pi_0^mu` against the abstract presentation of
/// `B_0^mu`, and generation of the corner by the loops `U_k` and `z`.
pub fn cross_check_corner(rd: &RootData, mu: &[Rational]) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("corner/{}", rd.label),
        "e_p Pi0^mu e_p has the graded dimensions of the U_k presentation of B0^mu and is generated by U_k and z",
        "spherical/corner-presentation",
    );
    b.input("type", rd.label.to_string()).input("mu", weight_json(mu));
    let res = (|| -> Result<()> {
        let nd = build_nodal_data(rd)?;
        let (t, a) = pi0mu_algebra(rd, mu)?;
        let corner = corner_algebra_dims(&t, nd.node);
        let pb = corner_presentation(rd, mu)?;
        let tb = graded(&pb, 2 * rd.h() + 4)?;
        b.eq("corner dims == B0^mu dims", &corner, trimmed(tb.dims()));

        // subalgebra of the corner generated by the loops through each leg and z e_p
        let node = nd.node;
        let mut gens: Vec<QVec> = Vec::new();
        for leg in &nd.legs {
            let nb = leg[0];
            let k = rd
                .edges
                .iter()
                .position(|&(s, t)| (s, t) == (node, nb) || (s, t) == (nb, node))
                .expect("leg edge");
            let m = rd.edges.len();
            let letters = if rd.edges[k].0 == node { vec![k, m + k] } else { vec![m + k, k] };
            gens.push(a.path_element(&Path { source: node, letters }));
        }
        let z = a.central_element().expect("z");
        gens.push(a.left_mul_idem(node, &z));
        let n = a.dim();
        let mut span = vec![a.idempotent(node)];
        let mut frontier = span.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for g in &gens {
                    let y = a.mul(x, g);
                    if !y.is_empty() && !in_span(&span, &y, n) {
                        span.push(y.clone());
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        b.eq("generated subalgebra dim", span.len(), corner.iter().sum::<usize>());
        Ok(())
    })();
    if let Err(e) = res {
        b.error("engine", e);
    }
    b.finish()
}

/// Reversing any single edge leaves the graded dimensions of `Pi_0` and
/// `Pi_0^rho` unchanged.
pub fn orientation_invariance(rd: &RootData) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("orientation/{}", rd.label),
        "Graded dimensions do not depend on the orientation of the quiver",
        "preprojective/orientation",
    );
    b.input("type", rd.label.to_string());
    let res = (|| -> Result<()> {
        let h = rd.h();
        let dims = |rd: &RootData| -> Result<(Vec<usize>, Vec<usize>)> {
            let p0 = presentation_of(&PreprojSpec::new(rd.clone(), Mode::Pi0))?;
            let pm = presentation_of(&PreprojSpec::new(rd.clone(), Mode::Pi0mu).with_mu(rho(rd)))?;
            Ok((
                trimmed(graded(&p0, 2 * h)?.dims()),
                trimmed(graded(&pm, 2 * h + 4)?.dims()),
            ))
        };
        let base = dims(rd)?;
        for k in 0..rd.edges.len() {
            let other = dims(&rd.reoriented(k))?;
            b.eq(&format!("edge {} reversed", k + 1), &other, &base);
        }
        Ok(())
    })();
    if let Err(e) = res {
        b.error("engine", e);
    }
    b.finish()
}

/// Seeded samples used by the default suite.
pub fn sample_regular_mu(rd: &RootData, seed: u64) -> Result<Vec<Rational>> {
    random_regular_weight(rd, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn sample_lambdas(rd: &RootData, mu: &[Rational], count: usize, seed: u64) -> Result<Vec<Vec<Rational>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_generic_lambda(rd, mu, &mut rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;
    use crate::rootdata::root_data;

    #[test]
    fn a2_pi0_with_oracle() {
        let rec = verify_pi0(&root_data("A2").unwrap(), true);
        assert!(rec.pass, "{:?}", rec.failed_items());
    }

    #[test]
    fn a2_pi0mu_at_rho() {
        let rd = root_data("A2").unwrap();
        let rec = verify_pi0mu(&rd, &rho(&rd), None);
        assert!(rec.pass, "{:#?}", rec.items);
        assert_eq!(rec.computed["dim"], json!(6));
        assert_eq!(rec.computed["socle_dim"], json!(2));
    }

    #[test]
    fn a2_blocks_at_one_two() {
        let rd = root_data("A2").unwrap();
        let rec = verify_block_decomposition(&rd, &[ri(1), ri(2)], None).unwrap();
        assert!(rec.pass, "{:#?}", rec.items);
        // c = 1, 2, 3/2 with multiplicities 1, 1, 4; z acts by -c
        let expected = expected_block_spectrum(&rd, &[ri(1), ri(2)], &rho(&rd));
        assert_eq!(expected, vec![(ri(-2), 1), (crate::exact::rat(-3, 2), 4), (ri(-1), 1)]);
    }

    #[test]
    fn a2_nongeneric_lambda_rejected() {
        let rd = root_data("A2").unwrap();
        assert!(matches!(
            verify_block_decomposition(&rd, &[ri(1), ri(1)], None),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn a2_weyl_denominator() {
        let rec = verify_weyl_denominator(&root_data("A2").unwrap());
        assert!(rec.pass, "{:#?}", rec.items);
    }

    #[test]
    fn a3_spherical_and_corner() {
        let rd = root_data("A3").unwrap();
        let rec = verify_b(&rd, 2, 5);
        assert!(rec.pass, "{:#?}", rec.items);
        let rec = cross_check_corner(&rd, &rho(&rd));
        assert!(rec.pass, "{:#?}", rec.items);
        assert_eq!(rec.computed["corner dims == B0^mu dims"], json!([1, 0, 2, 0, 1]));
    }

    #[test]
    fn a2_ideal_powers_and_orientation() {
        let rd = root_data("A2").unwrap();
        let rec = verify_ideal_powers(&rd);
        assert!(rec.pass, "{:#?}", rec.items);
        assert!(orientation_invariance(&root_data("A3").unwrap()).pass);
    }

    #[test]
    fn a2_flatness_and_truncation() {
        let rd = root_data("A2").unwrap();
        let mu = rho(&rd);
        let lams = sample_lambdas(&rd, &mu, 2, 3).unwrap();
        let rec = verify_flatness(&rd, &mu, &lams, Some(3));
        assert!(rec.pass, "{:#?}", rec.items);
        let rec = verify_pi_truncated(&rd, 6);
        assert!(rec.pass, "{:#?}", rec.items);
    }
}
