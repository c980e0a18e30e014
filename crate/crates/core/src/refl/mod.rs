//! The 2-dimensional exceptional complex reflection groups in their three
//! families, coset enumeration of their presentations, and the cyclotomic
//! Hecke algebras built from the same data.

pub mod todd_coxeter;

use num_traits::One;
use serde::Serialize;
use serde_json::json;

pub use todd_coxeter::{cyclically_reduce, letters_of, todd_coxeter, CosetTable, Letters, DEFAULT_MAX_COSETS};

use crate::error::{Error, Result};
use crate::exact::{rat, ri, Rational};
use crate::ncengine::{build_filtered_basis_with, AlgebraPresentation, FilteredStrategy, Path};
use crate::report::{CheckRecord, RecordBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Tetrahedral, Family::Octahedral, Family::Icosahedral];

    /// Orders `(2, 3, c)` of the triangle generators.
    pub fn triangle(self) -> [usize; 3] {
        match self {
            Family::Tetrahedral => [2, 3, 3],
            Family::Octahedral => [2, 3, 4],
            Family::Icosahedral => [2, 3, 5],
        }
    }

    /// Leg data `d_k` of the matching star-shaped quiver, longest first.
    pub fn leg_orders(self) -> Vec<usize> {
        let [a, b, c] = self.triangle();
        vec![c, b, a]
    }

    pub fn group_order(self) -> usize {
        match self {
            Family::Tetrahedral => 12,
            Family::Octahedral => 24,
            Family::Icosahedral => 60,
        }
    }

    /// Dynkin type with the same `(q1, q2)`.
    pub fn quiver_type(self) -> &'static str {
        match self {
            Family::Tetrahedral => "E6",
            Family::Octahedral => "E7",
            Family::Icosahedral => "E8",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_lowercase().as_str() {
            "tetrahedral" | "t" => Some(Family::Tetrahedral),
            "octahedral" | "o" | "cube" => Some(Family::Octahedral),
            "icosahedral" | "i" => Some(Family::Icosahedral),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupPresentation {
    /// `G4` .. `G22`, or `tetrahedral` etc. for the base groups.
    pub name: String,
    pub family: Family,
    pub generators: Vec<String>,
    /// Signed 1-based words.
    pub relators: Vec<Vec<i32>>,
    /// Generators `g` with a relator `g^p = 1`, with `p`.
    pub reflections: Vec<(String, usize)>,
    pub expected_order: usize,
    pub is_base: bool,
    pub is_maximal: bool,
    /// Relations as displayed, for reports.
    pub display: Vec<String>,
}

impl GroupPresentation {
    pub fn letters(&self) -> Vec<Letters> {
        self.relators.iter().map(|r| letters_of(r)).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }
}

fn power(g: i32, n: i32) -> Vec<i32> {
    let s = if n >= 0 { g } else { -g };
    vec![s; n.unsigned_abs() as usize]
}

struct Builder {
    gens: Vec<String>,
    rels: Vec<Vec<i32>>,
    display: Vec<String>,
    reflections: Vec<(String, usize)>,
}

impl Builder {
    fn new(gens: &[&str]) -> Self {
        Builder {
            gens: gens.iter().map(|s| s.to_string()).collect(),
            rels: Vec::new(),
            display: Vec::new(),
            reflections: Vec::new(),
        }
    }

    fn g(&self, name: &str) -> i32 {
        self.gens.iter().position(|g| g == name).expect("generator") as i32 + 1
    }

    /// `x^n = central^e`; a reflection when `e = 0`.
    fn power_rel(&mut self, x: &str, n: i32, central: &str, e: i32) {
        let mut w = power(self.g(x), n);
        if e != 0 {
            w.extend(power(self.g(central), -e));
            self.display.push(format!("{x}^{n}={central}^{e}"));
        } else {
            self.display.push(format!("{x}^{n}=1"));
            self.reflections.push((x.to_string(), n as usize));
        }
        self.rels.push(w);
    }

    fn abc(&mut self, a: &str, b: &str, c: &str, rhs: Option<&str>) {
        let mut w = vec![self.g(a), self.g(b), self.g(c)];
        match rhs {
            Some(z) => {
                w.push(-self.g(z));
                self.display.push(format!("{a}{b}{c}={z}"));
            }
            None => self.display.push(format!("{a}{b}{c}=1")),
        }
        self.rels.push(w);
    }

    fn central(&mut self, z: &str) {
        let zi = self.g(z);
        for k in 1..=self.gens.len() as i32 {
            if k != zi {
                self.rels.push(vec![zi, k, -zi, -k]);
            }
        }
        self.display.push(format!("{z} central"));
    }

    fn finish(self, name: &str, family: Family, order: usize, is_base: bool, is_maximal: bool) -> GroupPresentation {
        GroupPresentation {
            name: name.to_string(),
            family,
            generators: self.gens,
            relators: self.rels,
            reflections: self.reflections,
            expected_order: order,
            is_base,
            is_maximal,
            display: self.display,
        }
    }
}

fn base(family: Family) -> GroupPresentation {
    let [p, q, r] = family.triangle();
    let mut b = Builder::new(&["a", "b", "c"]);
    b.power_rel("a", p as i32, "", 0);
    b.power_rel("b", q as i32, "", 0);
    b.power_rel("c", r as i32, "", 0);
    b.abc("a", "b", "c", None);
    let name = format!("{family:?}").to_lowercase();
    b.finish(&name, family, family.group_order(), true, false)
}

fn maximal(name: &str, family: Family) -> GroupPresentation {
    let [p, q, r] = family.triangle();
    let mut b = Builder::new(&["a*", "b*", "c*", "Z"]);
    b.power_rel("a*", p as i32, "", 0);
    b.power_rel("b*", q as i32, "", 0);
    b.power_rel("c*", r as i32, "", 0);
    b.abc("a*", "b*", "c*", Some("Z"));
    b.central("Z");
    let n = family.group_order();
    b.finish(name, family, n * n, false, true)
}

/// Groups whose relations are `a^2 = zeta^ea`, `b^3 = zeta^eb`,
/// `c^r = zeta^ec`, `abc = 1`, `zeta` central.
fn zeta_group(name: &str, family: Family, exps: [i32; 3], order: usize) -> GroupPresentation {
    let [p, q, r] = family.triangle();
    let mut b = Builder::new(&["a", "b", "c", "zeta"]);
    b.power_rel("a", p as i32, "zeta", exps[0]);
    b.power_rel("b", q as i32, "zeta", exps[1]);
    b.power_rel("c", r as i32, "zeta", exps[2]);
    b.abc("a", "b", "c", None);
    b.central("zeta");
    b.finish(name, family, order, false, false)
}

/// The octahedral groups with an extra reflection `f`: `a^2 = 1`,
/// `b^3 = zeta^eb`, `f^2 = 1`, `c^2 zeta = f`, `abc = 1`, `zeta` central.
fn f_group(name: &str, eb: i32, order: usize) -> GroupPresentation {
    let mut b = Builder::new(&["a", "b", "c", "f", "zeta"]);
    b.power_rel("a", 2, "zeta", 0);
    b.power_rel("b", 3, "zeta", eb);
    b.power_rel("f", 2, "zeta", 0);
    let (c, z, f) = (b.g("c"), b.g("zeta"), b.g("f"));
    b.rels.push(vec![c, c, z, -f]);
    b.display.push("c^2 zeta=f".into());
    b.abc("a", "b", "c", None);
    b.central("zeta");
    b.finish(name, Family::Octahedral, order, false, false)
}

/// Three base groups and `G4` .. `G22`.
pub fn group_catalog() -> Vec<GroupPresentation> {
    use Family::*;
    vec![
        base(Tetrahedral),
        base(Octahedral),
        base(Icosahedral),
        zeta_group("G4", Tetrahedral, [-1, 1, 0], 24),
        zeta_group("G5", Tetrahedral, [-1, 0, 0], 72),
        zeta_group("G6", Tetrahedral, [0, -1, 0], 48),
        maximal("G7", Tetrahedral),
        zeta_group("G8", Octahedral, [-1, 1, 0], 96),
        zeta_group("G9", Octahedral, [0, -1, 0], 192),
        zeta_group("G10", Octahedral, [-1, 0, 0], 288),
        maximal("G11", Octahedral),
        zeta_group("G12", Octahedral, [0, -1, 1], 48),
        f_group("G13", 1, 96),
        zeta_group("G14", Octahedral, [0, 0, -1], 144),
        f_group("G15", 0, 288),
        zeta_group("G16", Icosahedral, [-1, 1, 0], 600),
        zeta_group("G17", Icosahedral, [0, -1, 0], 1200),
        zeta_group("G18", Icosahedral, [-1, 0, 0], 1800),
        maximal("G19", Icosahedral),
        zeta_group("G20", Icosahedral, [-1, 0, 2], 360),
        zeta_group("G21", Icosahedral, [0, 0, -1], 720),
        zeta_group("G22", Icosahedral, [0, 1, -2], 240),
    ]
}

pub fn find_group(name: &str) -> Option<GroupPresentation> {
    let n = name.trim().to_ascii_lowercase();
    group_catalog().into_iter().find(|g| g.name.to_ascii_lowercase() == n)
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupOrderRow {
    pub group: String,
    pub family: Family,
    pub expected_order: usize,
    pub computed_order: Option<usize>,
    pub cosets: usize,
    pub reflection_orders: Vec<(String, usize, usize)>,
    pub pass: bool,
    pub error: Option<String>,
}

/// Enumerates one presentation and checks its order and the orders of the
/// reflection generators in the permutation representation.
pub fn verify_group(g: &GroupPresentation, max_cosets: usize) -> GroupOrderRow {
    match todd_coxeter(g.generators.len(), &g.letters(), max_cosets) {
        Ok(t) => {
            let reflection_orders: Vec<(String, usize, usize)> = g
                .reflections
                .iter()
                .map(|(name, p)| {
                    let i = g.generator_index(name).expect("generator");
                    (name.clone(), *p, t.element_order(&[2 * i]))
                })
                .collect();
            let pass = t.order() == g.expected_order && reflection_orders.iter().all(|(_, p, o)| p == o);
            GroupOrderRow {
                group: g.name.clone(),
                family: g.family,
                expected_order: g.expected_order,
                computed_order: Some(t.order()),
                cosets: t.total_defined,
                reflection_orders,
                pass,
                error: None,
            }
        }
        Err(e) => GroupOrderRow {
            group: g.name.clone(),
            family: g.family,
            expected_order: g.expected_order,
            computed_order: None,
            cosets: 0,
            reflection_orders: vec![],
            pass: false,
            error: Some(e.to_string()),
        },
    }
}

/// Orders of the selected groups, plus `|G-hat| = |G|^2` in each family
/// whose base and maximal groups are both included.
pub fn verify_group_orders(groups: &[GroupPresentation], max_cosets: usize) -> (CheckRecord, Vec<GroupOrderRow>) {
    use rayon::prelude::*;
    let mut b = RecordBuilder::new(
        "group-orders",
        "Each catalog presentation enumerates to the stated group order",
        "reflection-groups/orders",
    );
    b.input("groups", groups.iter().map(|g| g.name.clone()).collect::<Vec<_>>())
        .input("max_cosets", max_cosets);
    let rows: Vec<GroupOrderRow> = groups.par_iter().map(|g| verify_group(g, max_cosets)).collect();
    for r in &rows {
        b.item(
            &r.group,
            json!({ "order": r.computed_order, "reflection_orders": r.reflection_orders, "error": r.error }),
            json!({ "order": r.expected_order }),
            r.pass,
        );
    }
    for fam in Family::ALL {
        let find = |pred: &dyn Fn(&GroupPresentation) -> bool| {
            groups
                .iter()
                .zip(&rows)
                .find(|(g, _)| g.family == fam && pred(g))
                .and_then(|(_, r)| r.computed_order)
        };
        if let (Some(base), Some(max)) = (find(&|g| g.is_base), find(&|g| g.is_maximal)) {
            b.eq(&format!("{fam:?} |G-hat| == |G|^2"), max, base * base);
        }
    }
    (b.finish(), rows)
}

/// A cyclotomic Hecke parameter `m * exp(2 pi i t)`, or the unipotent value 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeParam {
    #[serde(serialize_with = "as_string")]
    pub modulus: Rational,
    /// Argument as a fraction of a full turn.
    #[serde(serialize_with = "as_string")]
    pub turn: Rational,
}

fn as_string<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl HeckeParam {
    pub fn one() -> Self {
        HeckeParam {
            modulus: Rational::one(),
            turn: ri(0),
        }
    }

    pub fn root_of_unity(turn: Rational) -> Self {
        HeckeParam {
            modulus: Rational::one(),
            turn,
        }
    }

    pub fn is_one(&self) -> bool {
        self.modulus.is_one() && self.turn == ri(0)
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        let m = crate::exact::rational_to_f64(&self.modulus);
        let t = crate::exact::rational_to_f64(&self.turn);
        num_complex::Complex64::from_polar(m, 2.0 * std::f64::consts::PI * t)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckePresentation {
    pub family: Family,
    pub leg_orders: Vec<usize>,
    /// `params[k]` are `b_{1k} .. b_{d_k k}`.
    pub params: Vec<Vec<HeckeParam>>,
    pub z_is_one: bool,
}

pub fn hecke_presentation(family: Family, params: Vec<Vec<HeckeParam>>, z_is_one: bool) -> Result<HeckePresentation> {
    let legs = family.leg_orders();
    if params.len() != legs.len() {
        return Err(Error::Precondition(format!(
            "{} parameter lists for {} generators",
            params.len(),
            legs.len()
        )));
    }
    for (k, (ps, &d)) in params.iter().zip(&legs).enumerate() {
        if ps.len() != d {
            return Err(Error::Precondition(format!("Y{} needs {d} parameters, got {}", k + 1, ps.len())));
        }
    }
    Ok(HeckePresentation {
        family,
        leg_orders: legs,
        params,
        z_is_one,
    })
}

/// The unipotent specialization with `Z = 1`.
pub fn unipotent_hecke(family: Family) -> HeckePresentation {
    let params = family.leg_orders().iter().map(|&d| vec![HeckeParam::one(); d]).collect();
    hecke_presentation(family, params, true).expect("arity from the family")
}

/// Parameters `exp(2 pi i j / d_k)`, `j = 0..d_k-1`, on every generator.
pub fn root_of_unity_hecke(family: Family, z_is_one: bool) -> HeckePresentation {
    let params = family
        .leg_orders()
        .iter()
        .map(|&d| (0..d).map(|j| HeckeParam::root_of_unity(rat(j as i64, d as i64))).collect())
        .collect();
    hecke_presentation(family, params, z_is_one).expect("arity from the family")
}

impl HeckePresentation {
    /// Presentation over `Q` in `u_k = Y_k - 1` (degree 1): `u_k^{d_k} = 0`
    /// and `(1 + u_1)...(1 + u_m) = 1`. Only the unipotent case with `Z = 1`
    /// has rational coefficients.
    pub fn to_algebra_presentation(&self) -> Result<AlgebraPresentation> {
        if !self.z_is_one || !self.params.iter().flatten().all(HeckeParam::is_one) {
            return Err(Error::Unsupported(
                "only the unipotent specialization with Z = 1 is rational".into(),
            ));
        }
        let m = self.leg_orders.len();
        let mut p = AlgebraPresentation::new(format!("H*({:?})", self.family).to_lowercase(), 1);
        for k in 0..m {
            p.add_generator(format!("u{}", k + 1), 0, 0, 1);
        }
        for (k, &d) in self.leg_orders.iter().enumerate() {
            p.add_relation(vec![(ri(1), Path { source: 0, letters: vec![k; d] })])?;
        }
        // nonempty ordered sub-products of (1 + u_1)...(1 + u_m)
        let mut terms = Vec::new();
        for mask in 1u32..(1 << m) {
            let letters: Vec<usize> = (0..m).filter(|k| mask & (1 << k) != 0).collect();
            terms.push((ri(1), Path { source: 0, letters }));
        }
        p.add_relation(terms)?;
        Ok(p)
    }
}

/// Dimension of `H_* = H(1)/(Z - 1)` with unipotent parameters.
pub fn hstar_dimension(family: Family) -> Result<usize> {
    let p = unipotent_hecke(family).to_algebra_presentation()?;
    Ok(build_filtered_basis_with(&p, 0, FilteredStrategy::Completion)?.total_dim)
}

pub fn verify_hstar(family: Family) -> CheckRecord {
    let mut b = RecordBuilder::new(
        format!("hstar/{}", format!("{family:?}").to_lowercase()),
        "H_* = H(1)/(Z-1) has dimension |G| = q1 q2 of the matching quiver",
        "hecke/hstar-dimension",
    );
    b.input("family", family).input("quiver", family.quiver_type());
    match hstar_dimension(family) {
        Ok(d) => {
            b.eq("dim H_*", d, family.group_order());
        }
        Err(e) => {
            b.error("dim H_*", e);
        }
    }
    if let Ok(rd) = crate::rootdata::root_data(family.quiver_type()) {
        if let Ok(nd) = crate::rootdata::build_nodal_data(&rd) {
            b.eq("q1 q2 of the quiver", nd.q1 * nd.q2, family.group_order());
            b.eq("leg orders", &nd.leg_orders, family.leg_orders());
        }
    }
    b.finish()
}
