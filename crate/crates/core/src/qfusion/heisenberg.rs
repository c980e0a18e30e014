//! The quantum Heisenberg algebra `xy - q yx = z`, `z` central, over
//! `Q[q, q^-1]`, kept in the normal form `y^i x^j z^m`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::exact::{qbinom, qint, LaurentPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Y,
    X,
    Z,
}

impl Letter {
    /// Weight under `q^h`: `y` has `+1`, `x` has `-1`.
    pub fn weight(self) -> i64 {
        match self {
            Letter::Y => 1,
            Letter::X => -1,
            Letter::Z => 0,
        }
    }

    pub fn parse(c: char) -> Option<Letter> {
        match c {
            'x' => Some(Letter::X),
            'y' => Some(Letter::Y),
            'z' => Some(Letter::Z),
            _ => None,
        }
    }
}

pub type Word = Vec<Letter>;

pub fn parse_word(s: &str) -> Option<Word> {
    s.chars().filter(|c| !c.is_whitespace()).map(Letter::parse).collect()
}

fn weight(w: &[Letter]) -> i64 {
    w.iter().map(|l| l.weight()).sum()
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, LaurentPoly>, k: K, c: LaurentPoly) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(k).or_insert_with(LaurentPoly::zero);
    *slot = &*slot + &c;
}

fn prune<K: Ord + Clone>(map: &mut BTreeMap<K, LaurentPoly>) {
    map.retain(|_, c| !c.is_zero());
}

/// Linear combination of words in `x, y, z`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WordElement {
    pub terms: BTreeMap<Word, LaurentPoly>,
}

impl WordElement {
    pub fn word(w: Word) -> Self {
        Self::term(w, LaurentPoly::one())
    }

    pub fn term(w: Word, c: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, w, c);
        WordElement { terms }
    }

    pub fn parse(s: &str) -> Option<Self> {
        parse_word(s).map(Self::word)
    }

    pub fn add(&mut self, w: Word, c: LaurentPoly) {
        add_into(&mut self.terms, w, c);
        prune(&mut self.terms);
    }

    pub fn concat(&self, other: &WordElement) -> WordElement {
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                add_into(&mut terms, w, ca * cb);
            }
        }
        prune(&mut terms);
        WordElement { terms }
    }
}

/// `sum c_{ijm}(q) y^i x^j z^m`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct HeisenbergElement {
    pub terms: BTreeMap<(u32, u32, u32), LaurentPoly>,
}

impl HeisenbergElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(i: u32, j: u32, m: u32, c: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, (i, j, m), c);
        HeisenbergElement { terms }
    }

    pub fn basis(i: u32, j: u32, m: u32) -> Self {
        Self::monomial(i, j, m, LaurentPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32, m: u32) -> LaurentPoly {
        self.terms.get(&(i, j, m)).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_into(&mut terms, *k, c.clone());
        }
        prune(&mut terms);
        HeisenbergElement { terms }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (k, a) in &self.terms {
            add_into(&mut terms, *k, a * c);
        }
        HeisenbergElement { terms }
    }

    /// Product through the closed commutation formula for `x^p y^j`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (&(i1, j1, m1), c1) in &self.terms {
            for (&(i2, j2, m2), c2) in &other.terms {
                let c12 = c1 * c2;
                for (&(a, b, k), c) in &closed_commutation(j1, i2).terms {
                    add_into(&mut terms, (i1 + a, b + j2, m1 + m2 + k), &c12 * c);
                }
            }
        }
        prune(&mut terms);
        HeisenbergElement { terms }
    }

    pub fn to_words(&self) -> WordElement {
        let mut w = WordElement::default();
        for (&(i, j, m), c) in &self.terms {
            w.add(monomial_word(i, j, m), c.clone());
        }
        w
    }

    /// Degree with `x`, `y` of degree 1 and `z` of degree 2; `None` if mixed.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|&(i, j, m)| i + j + 2 * m);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }
}

pub fn monomial_word(i: u32, j: u32, m: u32) -> Word {
    let mut w = vec![Letter::Y; i as usize];
    w.extend(std::iter::repeat(Letter::X).take(j as usize));
    w.extend(std::iter::repeat(Letter::Z).take(m as usize));
    w
}

impl fmt::Debug for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j, m), c)| {
                let mut mono = String::new();
                for (name, e) in [("y", i), ("x", j), ("z", m)] {
                    match e {
                        0 => {}
                        1 => mono.push_str(name),
                        _ => mono.push_str(&format!("{name}^{e}")),
                    }
                }
                if mono.is_empty() {
                    mono.push('1');
                }
                format!("({})*{mono}", c.display_with("q"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for HeisenbergElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&(i, j, m), c) in &self.terms {
            seq.serialize_element(&(i, j, m, c))?;
        }
        seq.end()
    }
}

/// Rewrites `xy -> q yx + z` and moves `z` to the right until every word
/// is `y^i x^j z^m`.
pub fn normalize(w: &WordElement) -> HeisenbergElement {
    let q = LaurentPoly::var_pow(1);
    let mut work: BTreeMap<(Word, u32), LaurentPoly> = BTreeMap::new();
    for (word, c) in &w.terms {
        let m = word.iter().filter(|&&l| l == Letter::Z).count() as u32;
        let rest: Word = word.iter().copied().filter(|&l| l != Letter::Z).collect();
        add_into(&mut work, (rest, m), c.clone());
    }
    let mut out = BTreeMap::new();
    // lexicographically largest words carry the most inversions; taking them
    // first lets the smaller words they produce merge before being rewritten
    while let Some(((word, m), c)) = work.pop_last() {
        if c.is_zero() {
            continue;
        }
        match word.windows(2).position(|p| p == [Letter::X, Letter::Y]) {
            None => {
                let i = word.iter().take_while(|&&l| l == Letter::Y).count() as u32;
                let j = word.len() as u32 - i;
                add_into(&mut out, (i, j, m), c);
            }
            Some(k) => {
                let mut swapped = word.clone();
                swapped.swap(k, k + 1);
                add_into(&mut work, (swapped, m), &c * &q);
                let mut removed = word;
                removed.drain(k..k + 2);
                add_into(&mut work, (removed, m + 1), c);
            }
        }
    }
    prune(&mut out);
    HeisenbergElement { terms: out }
}

/// `x^p y^j = sum_i q^{(j-i)(p-i)} binom(p,i)_q prod_{s=1}^i [j-s+1]_q y^{j-i} x^{p-i} z^i`.
pub fn closed_commutation(p: u32, j: u32) -> HeisenbergElement {
    let mut terms = BTreeMap::new();
    for i in 0..=p.min(j) {
        let mut c = qbinom(p, i).expect("i <= p");
        for s in 1..=i {
            c = &c * &qint((j - s + 1) as i64);
        }
        let e = (j - i) as i64 * (p - i) as i64;
        add_into(&mut terms, (j - i, p - i, i), c.shift(e));
    }
    prune(&mut terms);
    HeisenbergElement { terms }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UqGenerator {
    E,
    F,
    /// `q^h`
    K,
}

fn letter_e(l: Letter) -> Option<Letter> {
    (l == Letter::X).then_some(Letter::Y)
}

fn letter_f(l: Letter) -> Option<Letter> {
    (l == Letter::Y).then_some(Letter::X)
}

/// `e` and `f` on a word through `Delta(e) = e (x) q^h + 1 (x) e` and
/// `Delta(f) = f (x) 1 + q^-h (x) f`.
pub fn act_on_word(g: UqGenerator, w: &[Letter]) -> WordElement {
    let mut out = WordElement::default();
    match g {
        UqGenerator::K => out.add(w.to_vec(), LaurentPoly::var_pow(weight(w))),
        UqGenerator::E => {
            for k in 0..w.len() {
                if let Some(l) = letter_e(w[k]) {
                    let mut v = w.to_vec();
                    v[k] = l;
                    out.add(v, LaurentPoly::var_pow(weight(&w[k + 1..])));
                }
            }
        }
        UqGenerator::F => {
            for k in 0..w.len() {
                if let Some(l) = letter_f(w[k]) {
                    let mut v = w.to_vec();
                    v[k] = l;
                    out.add(v, LaurentPoly::var_pow(-weight(&w[..k])));
                }
            }
        }
    }
    out
}

pub fn uq_action(g: UqGenerator, a: &HeisenbergElement) -> HeisenbergElement {
    if g == UqGenerator::K {
        let mut terms = BTreeMap::new();
        for (&(i, j, m), c) in &a.terms {
            add_into(&mut terms, (i, j, m), c.shift(i as i64 - j as i64));
        }
        return HeisenbergElement { terms };
    }
    let mut acc = WordElement::default();
    for (&(i, j, m), c) in &a.terms {
        for (w, d) in act_on_word(g, &monomial_word(i, j, m)).terms {
            acc.add(w, c * &d);
        }
    }
    normalize(&acc)
}

/// Symmetric quantum integer `(q^n - q^-n)/(q - q^-1)`.
pub fn sym_qint(n: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for k in 0..n {
        p.add_term(n - 1 - 2 * k, Rational::one());
    }
    p
}

/// `v^{weight}` summed over the basis `y^i x^j z^m` of degree `n`.
pub fn graded_character(n: u32) -> LaurentPoly {
    let mut ch = LaurentPoly::zero();
    for m in 0..=n / 2 {
        let rest = n - 2 * m;
        for i in 0..=rest {
            ch.add_term(i as i64 - (rest - i) as i64, Rational::one());
        }
    }
    ch
}

/// Character of `V_k`: `(v^{k+1} - v^{-k-1})/(v - v^-1)`.
pub fn simple_character(k: u32) -> LaurentPoly {
    sym_qint(k as i64 + 1)
}

/// Greedy decomposition into the characters of `V_0, V_1, ...`; returns
/// multiplicities indexed by `k`.
pub fn decompose(ch: &LaurentPoly) -> std::result::Result<Vec<u64>, String> {
    let mut rest = ch.clone();
    let mut mult: Vec<u64> = Vec::new();
    while let Some(d) = rest.degree() {
        let c = rest.coeff(d);
        if d < 0 || !c.is_integer() || c <= Rational::zero() {
            return Err(format!("non-dominant remainder {}", rest.display_with("v")));
        }
        let k = d as usize;
        if mult.len() <= k {
            mult.resize(k + 1, 0);
        }
        let n: BigInt = c.to_integer();
        mult[k] += u64::try_from(n).map_err(|e| e.to_string())?;
        rest = &rest - &simple_character(k as u32).scale(&c);
    }
    Ok(mult)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;
    use proptest::prelude::*;

    fn q(e: i64) -> LaurentPoly {
        LaurentPoly::var_pow(e)
    }

    #[test]
    fn defining_relation() {
        let n = normalize(&WordElement::parse("xy").unwrap());
        assert_eq!(n, HeisenbergElement::monomial(1, 1, 0, q(1)).add(&HeisenbergElement::basis(0, 0, 1)));
        let yx = normalize(&WordElement::parse("yx").unwrap());
        assert_eq!(yx, HeisenbergElement::basis(1, 1, 0));
    }

    #[test]
    fn x_times_y_squared() {
        let n = normalize(&WordElement::parse("xyy").unwrap());
        let expected = HeisenbergElement::monomial(2, 1, 0, q(2))
            .add(&HeisenbergElement::monomial(1, 0, 1, LaurentPoly::from_coeffs(0, &[1, 1])));
        assert_eq!(n, expected);
    }

    #[test]
    fn closed_formula_small_cases() {
        assert_eq!(closed_commutation(0, 5), HeisenbergElement::basis(5, 0, 0));
        assert_eq!(closed_commutation(1, 1), normalize(&WordElement::parse("xy").unwrap()));
        assert_eq!(closed_commutation(2, 2), normalize(&WordElement::parse("xxyy").unwrap()));
    }

    #[test]
    fn action_on_generators() {
        let x = HeisenbergElement::basis(0, 1, 0);
        let y = HeisenbergElement::basis(1, 0, 0);
        let z = HeisenbergElement::basis(0, 0, 1);
        assert_eq!(uq_action(UqGenerator::E, &x), y);
        assert_eq!(uq_action(UqGenerator::F, &y), x);
        assert!(uq_action(UqGenerator::E, &y).is_zero());
        assert!(uq_action(UqGenerator::F, &x).is_zero());
        assert!(uq_action(UqGenerator::E, &z).is_zero());
        assert_eq!(uq_action(UqGenerator::K, &y), y.scale(&q(1)));
        assert!(uq_action(UqGenerator::E, &HeisenbergElement::basis(4, 0, 0)).is_zero());
    }

    #[test]
    fn action_respects_relation() {
        // e and f must kill the relation element xy - q yx - z
        let rel = normalize(&WordElement::parse("xy").unwrap())
            .add(&HeisenbergElement::monomial(1, 1, 0, -q(1)))
            .add(&HeisenbergElement::monomial(0, 0, 1, -LaurentPoly::one()));
        assert!(rel.is_zero());
        let mut w = WordElement::parse("xy").unwrap();
        w.add(parse_word("yx").unwrap(), -q(1));
        w.add(parse_word("z").unwrap(), LaurentPoly::from_int(-1));
        for g in [UqGenerator::E, UqGenerator::F] {
            let mut acc = WordElement::default();
            for (word, c) in &w.terms {
                for (v, d) in act_on_word(g, word).terms {
                    acc.add(v, c * &d);
                }
            }
            assert!(normalize(&acc).is_zero(), "{g:?}");
        }
    }

    #[test]
    fn characters_and_decomposition() {
        let ch2 = graded_character(2);
        assert_eq!(ch2, LaurentPoly::from_coeffs(-2, &[1, 0, 2, 0, 1]));
        assert_eq!(decompose(&ch2).unwrap(), vec![1, 0, 1]);
        assert_eq!(decompose(&graded_character(0)).unwrap(), vec![1]);
        assert_eq!(decompose(&graded_character(5)).unwrap(), vec![0, 1, 0, 1, 0, 1]);
        assert!(decompose(&LaurentPoly::from_coeffs(-1, &[1, 0, 0])).is_err());
    }

    #[test]
    fn sym_qint_values() {
        assert_eq!(sym_qint(2), LaurentPoly::from_coeffs(-1, &[1, 0, 1]));
        assert_eq!(sym_qint(1).eval(&ri(5)), ri(1));
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec(prop_oneof![Just(Letter::X), Just(Letter::Y), Just(Letter::Z)], 0..5)
    }

    proptest! {
        #[test]
        fn product_matches_rewriting(a in word_strategy(), b in word_strategy()) {
            let na = normalize(&WordElement::word(a.clone()));
            let nb = normalize(&WordElement::word(b.clone()));
            let mut ab = a.clone();
            ab.extend(b);
            prop_assert_eq!(na.mul(&nb), normalize(&WordElement::word(ab)));
        }
    }
}
