//! ADE quivers, their root systems and the combinatorial constants derived from
//! them.
//!
//! Vertex numbering (0-based, displayed 1-based) follows Bourbaki:
//!
//! * `A_n`: the chain `1 - 2 - ... - n`;
//! * `D_n`: the chain `1 - ... - (n-2)` with `n-1` and `n` both attached to `n-2`;
//! * `E_n`: the chain `1 - 3 - 4 - ... - n` with `2` attached to `4`.
//!
//! The default orientation sends every edge from the lower to the higher index.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeLabel {
    pub family: Family,
    pub rank: usize,
}

impl TypeLabel {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(TypeLabel { family, rank })
        } else {
            Err(Error::InvalidLabel(format!("{family:?}{rank}")))
        }
    }

    /// `A2..A8, D4..D8, E6, E7, E8`.
    pub fn standard_list() -> Vec<TypeLabel> {
        let mut v = Vec::new();
        for n in 2..=8 {
            v.push(TypeLabel { family: Family::A, rank: n });
        }
        for n in 4..=8 {
            v.push(TypeLabel { family: Family::D, rank: n });
        }
        for n in 6..=8 {
            v.push(TypeLabel { family: Family::E, rank: n });
        }
        v
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('_', "");
        let bad = || Error::InvalidLabel(s.to_string());
        let mut chars = t.chars();
        let fam = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Family::A,
            'D' => Family::D,
            'E' => Family::E,
            _ => return Err(bad()),
        };
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        TypeLabel::new(fam, n).map_err(|_| bad())
    }
}

/// An oriented ADE quiver together with its root-system data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootData {
    pub label: TypeLabel,
    /// Oriented edges `(source, target)` of the quiver.
    pub edges: Vec<(usize, usize)>,
    pub cartan: Vec<Vec<i64>>,
    pub adjacency: Vec<Vec<i64>>,
    pub coxeter_number: usize,
    /// `dual_perm[i] = P(i)`, the involution with `-w0(e_i) = e_{P(i)}`.
    pub dual_perm: Vec<usize>,
    /// Positive roots in simple-root coordinates.
    pub positive_roots: Vec<Vec<i64>>,
}

fn undirected_edges(label: TypeLabel) -> Vec<(usize, usize)> {
    let n = label.rank;
    match label.family {
        Family::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
        Family::D => {
            let mut e: Vec<(usize, usize)> = (0..n - 3).map(|i| (i, i + 1)).collect();
            e.push((n - 3, n - 2));
            e.push((n - 3, n - 1));
            e
        }
        Family::E => {
            let mut e = vec![(0, 2), (1, 3)];
            for i in 2..n - 1 {
                e.push((i, i + 1));
            }
            e.sort();
            e
        }
    }
}

pub fn build_root_data(label: TypeLabel) -> RootData {
    let r = label.rank;
    let edges = undirected_edges(label);
    let mut adjacency = vec![vec![0i64; r]; r];
    for &(a, b) in &edges {
        adjacency[a][b] += 1;
        adjacency[b][a] += 1;
    }
    let cartan: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { 2 } else { -adjacency[i][j] }).collect())
        .collect();
    let positive_roots = reflection_closure(&cartan);
    let max_height = positive_roots
        .iter()
        .map(|a| a.iter().sum::<i64>())
        .max()
        .unwrap_or(0);
    let dual_perm = (0..r).map(|i| dual_vertex(&cartan, i)).collect();
    RootData {
        label,
        edges,
        cartan,
        adjacency,
        coxeter_number: (max_height + 1) as usize,
        dual_perm,
        positive_roots,
    }
}

/// Parses a label and builds the root data with the default orientation.
pub fn root_data(label: &str) -> Result<RootData> {
    Ok(build_root_data(label.parse()?))
}

/// Positive roots by closing the simple roots under simple reflections.
fn reflection_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..r {
        let mut s = vec![0; r];
        s[i] = 1;
        seen.insert(s.clone());
        queue.push_back(s);
    }
    while let Some(beta) = queue.pop_front() {
        for k in 0..r {
            let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][k]).sum();
            if pairing == 0 {
                continue;
            }
            let mut img = beta.clone();
            img[k] -= pairing;
            if img.iter().all(|&c| c >= 0) && img.iter().any(|&c| c > 0) && seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

/// Reflects the fundamental weight `e_i` greedily (while some coordinate is
/// positive) until it is antidominant; the result is `w0(e_i) = -e_{P(i)}`.
fn dual_vertex(cartan: &[Vec<i64>], i: usize) -> usize {
    let r = cartan.len();
    let mut beta = vec![0i64; r];
    beta[i] = 1;
    while let Some(k) = (0..r).find(|&k| beta[k] > 0) {
        let c = beta[k];
        for j in 0..r {
            beta[j] -= c * cartan[k][j];
        }
    }
    let j = (0..r)
        .find(|&j| beta[j] == -1)
        .expect("antidominant image of a fundamental weight is minus a fundamental weight");
    debug_assert!(beta.iter().enumerate().all(|(k, &v)| v == if k == j { -1 } else { 0 }));
    j
}

impl RootData {
    pub fn rank(&self) -> usize {
        self.label.rank
    }

    pub fn h(&self) -> usize {
        self.coxeter_number
    }

    pub fn cartan_matrix(&self) -> QMatrix {
        QMatrix::from_ints(&self.cartan)
    }

    pub fn adjacency_matrix(&self) -> QMatrix {
        QMatrix::from_ints(&self.adjacency)
    }

    pub fn dual_perm_matrix(&self) -> QMatrix {
        let r = self.rank();
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| (self.dual_perm[i] == j) as i64).collect())
            .collect();
        QMatrix::from_ints(&rows)
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("root system is nonempty")
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    /// `(alpha, lambda)` for a root in simple-root coordinates and a weight in
    /// fundamental-weight coordinates.
    pub fn pair_root_weight(root: &[i64], weight: &[Rational]) -> Rational {
        root.iter()
            .zip(weight)
            .fold(Rational::from_integer(0.into()), |acc, (a, w)| acc + w * Rational::from_integer((*a).into()))
    }

    /// `(alpha, beta)` for two vectors in simple-root coordinates.
    pub fn root_pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| a[i] * self.cartan[i][j] * b[j]).sum::<i64>())
            .sum()
    }

    /// Whether `(alpha, mu) != 0` for every positive root.
    pub fn is_regular(&self, mu: &[Rational]) -> bool {
        self.positive_roots
            .iter()
            .all(|a| !Self::pair_root_weight(a, mu).is_zero_value())
    }

    /// The same quiver with edge `idx` reversed.
    pub fn reoriented(&self, idx: usize) -> RootData {
        let mut out = self.clone();
        let (s, t) = out.edges[idx];
        out.edges[idx] = (t, s);
        out
    }

    /// Neighbours of a vertex in the underlying graph.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&w| self.adjacency[v][w] != 0).collect()
    }

    /// Branch vertex for D/E, middle vertex for odd-rank A.
    pub fn nodal_vertex(&self) -> Option<usize> {
        let r = self.rank();
        match self.label.family {
            Family::A if r % 2 == 1 => Some(r / 2),
            Family::A => None,
            _ => (0..r).find(|&v| self.neighbours(v).len() == 3),
        }
    }
}

trait IsZeroValue {
    fn is_zero_value(&self) -> bool;
}

impl IsZeroValue for Rational {
    fn is_zero_value(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Data attached to the nodal vertex of an `A_{2n-1}`, `D` or `E` quiver.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct NodalData {
    pub node: usize,
    /// Leg vertex sequences enumerated from the node, longest leg first.
    pub legs: Vec<Vec<usize>>,
    /// `d_k = len(leg_k) + 1`.
    pub leg_orders: Vec<usize>,
    pub q1: usize,
    pub q2: usize,
}

impl NodalData {
    pub fn num_legs(&self) -> usize {
        self.legs.len()
    }

    pub fn group_order(&self) -> usize {
        self.q1 * self.q2
    }
}

pub fn build_nodal_data(rd: &RootData) -> Result<NodalData> {
    let node = rd.nodal_vertex().ok_or_else(|| {
        Error::Unsupported(format!("{} has no nodal vertex (even-rank type A)", rd.label))
    })?;
    let mut legs = Vec::new();
    for start in rd.neighbours(node) {
        let mut leg = vec![start];
        let mut visited: BTreeSet<usize> = [node, start].into_iter().collect();
        let mut cur = start;
        loop {
            let next: Vec<usize> = rd
                .neighbours(cur)
                .into_iter()
                .filter(|v| !visited.contains(v))
                .collect();
            match next.as_slice() {
                [] => break,
                [v] => {
                    leg.push(*v);
                    visited.insert(*v);
                    cur = *v;
                }
                _ => unreachable!("legs of an ADE diagram are chains"),
            }
        }
        legs.push(leg);
    }
    legs.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
    let leg_orders = legs.iter().map(|l| l.len() + 1).collect();
    let q1 = rd.highest_root()[node] as usize;
    let q2 = rd.h() / 2 + 1 - q1;
    Ok(NodalData {
        node,
        legs,
        leg_orders,
        q1,
        q2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;

    /// Independent oracle: enumerate nonnegative integer vectors with
    /// `(beta, beta) = 2` (the positive roots of a simply-laced system),
    /// bounded coordinatewise by 6.
    fn brute_force_roots(rd: &RootData) -> BTreeSet<Vec<i64>> {
        let r = rd.rank();
        let bound = 6i64;
        let mut out = BTreeSet::new();
        let mut v = vec![0i64; r];
        loop {
            if v.iter().any(|&x| x > 0) && rd.root_pairing(&v, &v) == 2 {
                // connected support is automatic for norm-2 vectors
                out.insert(v.clone());
            }
            let mut i = 0;
            loop {
                if i == r {
                    return out;
                }
                v[i] += 1;
                if v[i] <= bound {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn a2_roots() {
        let rd = root_data("A2").unwrap();
        let set: BTreeSet<Vec<i64>> = rd.positive_roots.iter().cloned().collect();
        assert_eq!(set, [vec![1, 0], vec![0, 1], vec![1, 1]].into_iter().collect());
        assert_eq!(rd.h(), 3);
    }

    #[test]
    fn root_counts_and_coxeter_numbers() {
        for (l, n, h) in [("D4", 12, 6), ("E6", 36, 12), ("E7", 63, 18), ("E8", 120, 30), ("A5", 15, 6)] {
            let rd = root_data(l).unwrap();
            assert_eq!(rd.positive_roots.len(), n, "{l}");
            assert_eq!(rd.h(), h, "{l}");
            assert_eq!(rd.positive_roots.len(), rd.rank() * rd.h() / 2);
        }
    }

    #[test]
    fn reflection_closure_matches_norm_two_enumeration() {
        for l in ["A3", "A4", "D4", "D5", "E6"] {
            let rd = root_data(l).unwrap();
            let set: BTreeSet<Vec<i64>> = rd.positive_roots.iter().cloned().collect();
            assert_eq!(set, brute_force_roots(&rd), "{l}");
        }
    }

    #[test]
    fn height_sum_identities() {
        for label in TypeLabel::standard_list() {
            let rd = build_root_data(label);
            let (h, r) = (rd.h() as i64, rd.rank() as i64);
            let s1: i64 = rd.positive_roots.iter().map(|a| RootData::height(a)).sum();
            let s2: i64 = rd.positive_roots.iter().map(|a| RootData::height(a).pow(2)).sum();
            assert_eq!(6 * s1, h * (h + 1) * r, "{label}");
            assert_eq!(12 * s2, h * h * (h + 1) * r, "{label}");
        }
    }

    #[test]
    fn cartan_shape_and_dual_involution() {
        for label in TypeLabel::standard_list() {
            let rd = build_root_data(label);
            let r = rd.rank();
            for i in 0..r {
                assert_eq!(rd.cartan[i][i], 2);
                for j in 0..r {
                    assert_eq!(rd.cartan[i][j], rd.cartan[j][i]);
                    if i != j {
                        assert!(rd.cartan[i][j] == 0 || rd.cartan[i][j] == -1);
                    }
                }
            }
            let p = rd.dual_perm_matrix();
            assert_eq!(&p * &p, QMatrix::identity(r), "{label}");
            let c = rd.adjacency_matrix();
            assert_eq!(&p * &c, &c * &p, "{label}");
        }
    }

    #[test]
    fn dual_permutation_by_type() {
        let flip = |r: usize| (0..r).rev().collect::<Vec<_>>();
        for n in 2..=8 {
            assert_eq!(root_data(&format!("A{n}")).unwrap().dual_perm, flip(n));
        }
        for l in ["D4", "D6", "D8", "E7", "E8"] {
            let rd = root_data(l).unwrap();
            assert_eq!(rd.dual_perm, (0..rd.rank()).collect::<Vec<_>>(), "{l}");
        }
        assert_eq!(root_data("D5").unwrap().dual_perm, vec![0, 1, 2, 4, 3]);
        assert_eq!(root_data("E6").unwrap().dual_perm, vec![5, 1, 4, 3, 2, 0]);
    }

    #[test]
    fn nodal_data_examples() {
        let a3 = build_nodal_data(&root_data("A3").unwrap()).unwrap();
        assert_eq!((a3.num_legs(), a3.leg_orders.clone(), a3.q1, a3.q2), (2, vec![2, 2], 1, 2));
        let d4 = build_nodal_data(&root_data("D4").unwrap()).unwrap();
        assert_eq!((d4.num_legs(), d4.leg_orders.clone(), d4.q1, d4.q2), (3, vec![2, 2, 2], 2, 2));
        let e6 = build_nodal_data(&root_data("E6").unwrap()).unwrap();
        assert_eq!((e6.num_legs(), e6.leg_orders.clone(), e6.q1, e6.q2), (3, vec![3, 3, 2], 3, 4));
        assert_eq!(e6.legs[0][0], 2, "legs are enumerated from the node");
        let e7 = build_nodal_data(&root_data("E7").unwrap()).unwrap();
        assert_eq!((e7.leg_orders.clone(), e7.q1, e7.q2), (vec![4, 3, 2], 4, 6));
        let e8 = build_nodal_data(&root_data("E8").unwrap()).unwrap();
        assert_eq!((e8.leg_orders.clone(), e8.q1, e8.q2), (vec![5, 3, 2], 6, 10));
        assert!(matches!(build_nodal_data(&root_data("A4").unwrap()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn q1_q2_constraints() {
        for label in TypeLabel::standard_list() {
            let rd = build_root_data(label);
            let Ok(nd) = build_nodal_data(&rd) else { continue };
            assert!(nd.q1 <= nd.q2, "{label}");
            assert_eq!(nd.q1 + nd.q2 - 1, rd.h() / 2, "{label}");
        }
    }

    #[test]
    fn label_parsing() {
        assert_eq!("E_6".parse::<TypeLabel>().unwrap().to_string(), "E6");
        assert!("D3".parse::<TypeLabel>().is_err());
        assert!("E9".parse::<TypeLabel>().is_err());
        assert!("X4".parse::<TypeLabel>().is_err());
    }

    #[test]
    fn regularity_of_rho() {
        let rd = root_data("D4").unwrap();
        assert!(rd.is_regular(&vec![ri(1); 4]));
        assert!(!rd.is_regular(&[ri(1), ri(-1), ri(0), ri(0)]));
    }
}
