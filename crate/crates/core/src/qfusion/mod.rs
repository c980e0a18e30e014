//! Quantum Heisenberg algebra at generic `q`, its `U_q(sl2)` symmetry, and
//! the fusion-category shadow used to predict the Hilbert polynomials of
//! `Pi_0^rho`.

pub mod fusion;
pub mod heisenberg;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

pub use fusion::{a_component, clebsch_gordan, fusion_functor_image, tchebysheff, verlinde_product, FusionElement};
pub use heisenberg::{
    closed_commutation, decompose, graded_character, normalize, simple_character, sym_qint, uq_action,
    HeisenbergElement, Letter, UqGenerator, WordElement,
};

use crate::exact::{qint, LaurentPoly, PolyMatrix, QMatrix};
use crate::preproj::closed::htilde;
use crate::preproj::{pi0mu_algebra, rho};
use crate::report::{CheckRecord, RecordBuilder};
use crate::rootdata::RootData;

pub const DEFAULT_SEED: u64 = 0x5eed;

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| [Letter::X, Letter::Y, Letter::Z][rng.gen_range(0..3)])
        .collect()
}

/// `fe(y^j x)` compared with both coefficients of the closed expression,
/// after multiplying through by `[2]_{q^-1}`.
pub fn fe_check(j: u32) -> (bool, bool) {
    let start = HeisenbergElement::basis(j, 1, 0);
    let fe = uq_action(UqGenerator::F, &uq_action(UqGenerator::E, &start));
    let a = fe.coeff(j, 1, 0);
    let b = fe.coeff(j - 1, 0, 1);
    let only_two = fe.terms.keys().all(|&k| k == (j, 1, 0) || k == (j - 1, 0, 1));
    let two_inv = qint(2).invert_var();
    let rhs_b = &qint(j as i64) * &qint(j as i64 + 1).invert_var();
    let ok = only_two && a == sym_qint(j as i64 + 1) && &b * &two_inv == rhs_b;
    (ok, !b.is_zero())
}

/// Defining identities of the quantum Heisenberg algebra and its character
/// decomposition.
pub fn verify_heisenberg(seed: u64) -> CheckRecord {
    let mut b = RecordBuilder::new(
        "heisenberg",
        "Quantum Heisenberg algebra: closed commutation formula, xy^j identity, fe(y^j x) identity with nonzero second coefficient, degree-n components V_n + V_(n-2) + ...",
        "quantum-heisenberg/structure",
    );
    b.seed(seed)
        .input("closed_commutation_max", 6)
        .input("commu_max", 8)
        .input("fe_max", 6)
        .input("character_max", 12)
        .input("associativity_triples", 100);

    let mut bad = Vec::new();
    for p in 0..=6u32 {
        for j in 0..=6u32 {
            let mut w = vec![Letter::X; p as usize];
            w.extend(std::iter::repeat(Letter::Y).take(j as usize));
            if normalize(&WordElement::word(w)) != closed_commutation(p, j) {
                bad.push((p, j));
            }
        }
    }
    b.eq("closed commutation == rewriting, p,j <= 6", &bad, Vec::<(u32, u32)>::new());

    let bad: Vec<u32> = (0..=8u32)
        .filter(|&j| {
            let mut w = vec![Letter::X];
            w.extend(std::iter::repeat(Letter::Y).take(j as usize));
            let mut expected = HeisenbergElement::monomial(j, 1, 0, LaurentPoly::var_pow(j as i64));
            if j > 0 {
                expected = expected.add(&HeisenbergElement::monomial(j - 1, 0, 1, qint(j as i64)));
            }
            normalize(&WordElement::word(w)) != expected
        })
        .collect();
    b.eq("x y^j = q^j y^j x + [j] y^(j-1) z, j <= 8", &bad, Vec::<u32>::new());

    let fe: Vec<(bool, bool)> = (1..=6).map(fe_check).collect();
    b.eq("fe(y^j x) identity, j <= 6", fe.iter().map(|p| p.0).collect::<Vec<_>>(), vec![true; 6]);
    b.eq("second coefficient nonzero, j <= 6", fe.iter().map(|p| p.1).collect::<Vec<_>>(), vec![true; 6]);

    let mut decomps = Vec::new();
    let mut ok = true;
    for n in 0..=12u32 {
        match decompose(&graded_character(n)) {
            Ok(m) => {
                let expected: Vec<u64> = (0..=n).map(|k| u64::from(k % 2 == n % 2)).collect();
                ok &= m == expected;
                decomps.push(json!(m));
            }
            Err(e) => {
                ok = false;
                decomps.push(json!({ "error": e }));
            }
        }
    }
    b.item("character multiplicities, n <= 12", decomps, "1 on V_(n-2s), 0 elsewhere", ok);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..100 {
        let ws: Vec<_> = (0..3).map(|_| random_word(&mut rng, 4)).collect();
        let n: Vec<HeisenbergElement> = ws.iter().map(|w| normalize(&WordElement::word(w.clone()))).collect();
        let left = n[0].mul(&n[1]).mul(&n[2]);
        let right = n[0].mul(&n[1].mul(&n[2]));
        let whole = normalize(&WordElement::word(ws.concat()));
        if left != right || left != whole {
            failures += 1;
        }
    }
    b.eq("associativity on seeded triples", failures, 0);
    b.finish()
}

/// Commutativity, associativity and unit of the Verlinde ring for every
/// level up to `max_level`.
pub fn verify_verlinde(max_level: usize) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("verlinde/l{max_level}"),
        "The Verlinde rule defines a commutative associative ring with unit V_0",
        "fusion/verlinde",
    );
    b.input("max_level", max_level);
    let mut bad = Vec::new();
    for l in 0..=max_level {
        let s = |k: usize| FusionElement::simple(Some(l), k).expect("k <= l");
        for i in 0..=l {
            if s(0).mul(&s(i)).ok() != Some(s(i)) {
                bad.push(json!({ "level": l, "unit": i }));
            }
            for j in 0..=l {
                let ij = s(i).mul(&s(j)).expect("in range");
                if ij != s(j).mul(&s(i)).expect("in range") {
                    bad.push(json!({ "level": l, "commutative": [i, j] }));
                }
                for k in 0..=l {
                    let lhs = ij.mul(&s(k)).expect("in range");
                    let rhs = s(i).mul(&s(j).mul(&s(k)).expect("in range")).expect("in range");
                    if lhs != rhs {
                        bad.push(json!({ "level": l, "associative": [i, j, k] }));
                    }
                }
            }
        }
    }
    b.eq("violations", &bad, Vec::<serde_json::Value>::new());
    b.finish()
}

fn is_nonneg_integer(m: &QMatrix) -> bool {
    (0..m.rows).all(|i| (0..m.cols).all(|j| m[(i, j)].is_integer() && m[(i, j)] >= crate::exact::rzero()))
}

/// `sum_{j} sum_{i <= h-2-j} t^{2i+j} P_j(C)`.
pub fn chebyshev_hilbert(rd: &RootData) -> PolyMatrix {
    let h = rd.h();
    let c = rd.adjacency_matrix();
    let mut acc = PolyMatrix::zeros(rd.rank());
    for j in 0..=h - 2 {
        let pj = tchebysheff(j, &c);
        for i in 0..=h - 2 - j {
            acc = &acc + &PolyMatrix::from_constant(&pj, (2 * i + j) as i64);
        }
    }
    acc
}

/// Image of the graded object `A` under `V_j -> P_j(C)`.
pub fn functor_image_of_a(rd: &RootData) -> PolyMatrix {
    let h = rd.h();
    let c = rd.adjacency_matrix();
    let mut acc = PolyMatrix::zeros(rd.rank());
    for n in 0..=2 * h - 4 {
        acc = &acc + &PolyMatrix::from_constant(&fusion_functor_image(&a_component(n, h), &c), n as i64);
    }
    acc
}

/// The functor from the fusion category to bimodules sends `A` to
/// `Pi_0^rho`: polynomial identities for every type, and agreement with the
/// engine when `with_engine` is set.
pub fn verify_prop_func_and_pir(rd: &RootData, with_engine: bool) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("fusion-functor/{}", rd.label),
        "sum t^(2i+j) P_j(C) equals the Hilbert polynomial of Pi0^rho, and dim Pi0^rho = h dim Pi0 / 2",
        "fusion/functor-image",
    );
    b.input("type", rd.label.to_string()).input("with_engine", with_engine);
    let h = rd.h();
    let r = rd.rank();
    let c = rd.adjacency_matrix();
    let nonneg: Vec<usize> = (0..=h - 2).filter(|&j| !is_nonneg_integer(&tchebysheff(j, &c))).collect();
    b.eq("P_j(C) nonnegative integral, j <= h-2", &nonneg, Vec::<usize>::new());
    b.eq("P_(h-1)(C) == 0", tchebysheff(h - 1, &c).is_zero(), true);
    b.eq("P_(h-2)(C) == P", tchebysheff(h - 2, &c) == rd.dual_perm_matrix(), true);
    let cheb = chebyshev_hilbert(rd);
    match htilde(rd) {
        Ok(ht) => {
            b.eq("sum t^(2i+j) P_j(C) == Htilde", cheb == ht, true);
            b.eq("F(A) == Htilde", functor_image_of_a(rd) == ht, true);
        }
        Err(e) => {
            b.error("Htilde", e);
        }
    }
    b.eq(
        "total == h dim Pi0 / 2",
        cheb.total().to_string(),
        (h * (h * (h + 1) * r / 6) / 2).to_string(),
    );
    if with_engine {
        match pi0mu_algebra(rd, &rho(rd)) {
            Ok((t, _)) => {
                b.eq("engine Hilbert matrix of Pi0^rho", t.hilbert_matrix() == cheb, true);
            }
            Err(e) => {
                b.error("engine", e);
            }
        }
    }
    b.finish()
}

/// `A[i]` and `A[2h-4-i]` carry the same multiplicities, and the top degree
/// is `V_0`.
pub fn verify_a_selfduality(h: usize) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("a-selfduality/h{h}"),
        "A[i] and A[2h-4-i] agree in the Grothendieck ring and A[2h-4] = V_0",
        "fusion/a-gorenstein",
    );
    b.input("h", h);
    let top = 2 * h - 4;
    let comps: Vec<Vec<u64>> = (0..=top).map(|n| a_component(n, h).support()).collect();
    let asym: Vec<usize> = (0..=top).filter(|&i| comps[i] != comps[top - i]).collect();
    b.eq("asymmetric degrees", &asym, Vec::<usize>::new());
    b.eq("A[2h-4]", &comps[top], vec![1u64]);
    b.eq("A[2h-3] == 0", a_component(top + 1, h).support().is_empty(), true);
    b.finish()
}
