//! Coset enumeration over the trivial subgroup, Felsch strategy.

use serde::Serialize;

use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

pub const DEFAULT_MAX_COSETS: usize = 100_000;

/// Letters are `2g` for generator `g` and `2g + 1` for its inverse.
pub type Letters = Vec<usize>;

fn inv(x: usize) -> usize {
    x ^ 1
}

/// Signed 1-based word (`-k` is the inverse of generator `k`) to letters.
pub fn letters_of(word: &[i32]) -> Letters {
    word.iter()
        .map(|&s| {
            let g = s.unsigned_abs() as usize - 1;
            if s > 0 {
                2 * g
            } else {
                2 * g + 1
            }
        })
        .collect()
}

/// Free and cyclic reduction.
pub fn cyclically_reduce(w: &[usize]) -> Letters {
    let mut out: Letters = Vec::new();
    for &x in w {
        if out.last() == Some(&inv(x)) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    while out.len() >= 2 && out[0] == inv(*out.last().expect("nonempty")) {
        out.pop();
        out.remove(0);
    }
    out
}

/// A closed coset table: row `i` maps letter `x` to `table[i][x]`.
#[derive(Clone, Debug, Serialize)]
pub struct CosetTable {
    pub num_generators: usize,
    pub table: Vec<Vec<usize>>,
    /// Cosets defined over the run, including those later identified.
    pub total_defined: usize,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn trace(&self, start: usize, w: &[usize]) -> usize {
        w.iter().fold(start, |c, &x| self.table[c][x])
    }

    /// Every relator fixes every coset.
    pub fn relators_hold(&self, relators: &[Letters]) -> bool {
        (0..self.order()).all(|c| relators.iter().all(|r| self.trace(c, r) == c))
    }

    /// Permutation of the cosets induced by generator `g`.
    pub fn permutation(&self, g: usize) -> Vec<usize> {
        self.table.iter().map(|row| row[2 * g]).collect()
    }

    /// Order of the permutation induced by a word.
    pub fn element_order(&self, w: &[usize]) -> usize {
        let perm: Vec<usize> = (0..self.order()).map(|c| self.trace(c, w)).collect();
        let mut seen = vec![false; perm.len()];
        let mut l = 1usize;
        for s in 0..perm.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut c = s;
            while !seen[c] {
                seen[c] = true;
                c = perm[c];
                len += 1;
            }
            l = num_integer::lcm(l, len);
        }
        l
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    /// Cyclic conjugates of relators and their inverses, by first letter.
    by_first: Vec<Vec<Letters>>,
    deductions: Vec<(usize, usize)>,
    max_cosets: usize,
    live: usize,
    collapsed: bool,
}

impl Enumerator {
    fn new(ngens: usize, relators: &[Letters], max_cosets: usize) -> Self {
        let ncols = 2 * ngens;
        let mut by_first = vec![Vec::new(); ncols];
        for r in relators {
            let ri: Letters = r.iter().rev().map(|&x| inv(x)).collect();
            for w in [r, &ri] {
                for k in 0..w.len() {
                    let mut c = w[k..].to_vec();
                    c.extend_from_slice(&w[..k]);
                    if !by_first[c[0]].contains(&c) {
                        by_first[c[0]].push(c);
                    }
                }
            }
        }
        Enumerator {
            ncols,
            table: vec![vec![NONE; ncols]],
            parent: vec![0],
            by_first,
            deductions: Vec::new(),
            max_cosets,
            live: 1,
            collapsed: false,
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.live >= self.max_cosets {
            return Err(Error::ResourceLimit(format!("coset table exceeded {} cosets", self.max_cosets)));
        }
        let n = self.table.len();
        self.table.push(vec![NONE; self.ncols]);
        self.parent.push(n);
        self.live += 1;
        self.table[c][x] = n;
        self.table[n][inv(x)] = c;
        self.deductions.push((c, x));
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        self.live -= 1;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.collapsed = true;
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.table[g][x];
                if d == NONE {
                    continue;
                }
                self.table[g][x] = NONE;
                if self.table[d][inv(x)] == g {
                    self.table[d][inv(x)] = NONE;
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu][x] != NONE {
                    let t = self.table[mu][x];
                    self.merge(nu, t, &mut queue);
                } else if self.table[nu][inv(x)] != NONE {
                    let t = self.table[nu][inv(x)];
                    self.merge(mu, t, &mut queue);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][inv(x)] = mu;
                    self.deductions.push((mu, x));
                }
            }
        }
    }

    /// Scans `w` from coset `a`, deducing a single missing entry when the
    /// forward and backward traces meet.
    fn scan(&mut self, a: usize, w: &[usize]) {
        let n = w.len();
        let (mut f, mut i) = (a, 0);
        while i < n && self.table[f][w[i]] != NONE {
            f = self.table[f][w[i]];
            i += 1;
        }
        if i == n {
            if f != a {
                self.coincidence(f, a);
            }
            return;
        }
        let (mut b, mut j) = (a, n);
        while j > i && self.table[b][inv(w[j - 1])] != NONE {
            b = self.table[b][inv(w[j - 1])];
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            self.table[f][w[i]] = b;
            self.table[b][inv(w[i])] = f;
            self.deductions.push((f, w[i]));
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for k in 0..self.by_first[x].len() {
                if !self.is_live(c) {
                    break;
                }
                let w = self.by_first[x][k].clone();
                self.scan(c, &w);
            }
            let d = self.table[c][x];
            if d == NONE || !self.is_live(d) {
                continue;
            }
            for k in 0..self.by_first[inv(x)].len() {
                if !self.is_live(d) {
                    break;
                }
                let w = self.by_first[inv(x)][k].clone();
                self.scan(d, &w);
            }
        }
    }

    fn first_gap(&self, from: usize) -> Option<(usize, usize)> {
        (from..self.table.len())
            .filter(|&c| self.is_live(c))
            .find_map(|c| (0..self.ncols).find(|&x| self.table[c][x] == NONE).map(|x| (c, x)))
    }

    fn run(&mut self) -> Result<()> {
        let mut from = 0;
        while let Some((c, x)) = self.first_gap(from) {
            from = c;
            self.define(c, x)?;
            self.process_deductions();
            // identifications can reopen entries of earlier cosets
            if std::mem::take(&mut self.collapsed) {
                from = 0;
            }
        }
        Ok(())
    }

    fn compact(self) -> CosetTable {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.parent[c] == c).collect();
        let mut index = vec![NONE; self.table.len()];
        for (k, &c) in live.iter().enumerate() {
            index[c] = k;
        }
        let table = live
            .iter()
            .map(|&c| self.table[c].iter().map(|&d| index[d]).collect())
            .collect();
        CosetTable {
            num_generators: self.ncols / 2,
            table,
            total_defined: self.table.len(),
        }
    }
}

/// Enumerates the cosets of the trivial subgroup and checks every relator on
/// the closed table.
pub fn todd_coxeter(num_generators: usize, relators: &[Letters], max_cosets: usize) -> Result<CosetTable> {
    let rels: Vec<Letters> = relators.iter().map(|r| cyclically_reduce(r)).filter(|r| !r.is_empty()).collect();
    let mut e = Enumerator::new(num_generators, &rels, max_cosets);
    e.run()?;
    let t = e.compact();
    if !t.relators_hold(&rels) {
        return Err(Error::InvalidPresentation("closed coset table violates a relator".into()));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group() {
        let t = todd_coxeter(1, &[letters_of(&[1, 1, 1])], 100).unwrap();
        assert_eq!(t.order(), 3);
    }

    #[test]
    fn dihedral_and_symmetric() {
        // <r, s | r^5, s^2, (rs)^2>
        let rels = [letters_of(&[1; 5]), letters_of(&[2, 2]), letters_of(&[1, 2, 1, 2])];
        assert_eq!(todd_coxeter(2, &rels, 1000).unwrap().order(), 10);
        // S4 as the (2,3,4) triangle group
        let rels = [letters_of(&[1, 1]), letters_of(&[2, 2, 2]), letters_of(&[1, 2, 1, 2, 1, 2, 1, 2])];
        let t = todd_coxeter(2, &rels, 1000).unwrap();
        assert_eq!(t.order(), 24);
        assert_eq!(t.element_order(&letters_of(&[2])), 3);
    }

    #[test]
    fn reduction() {
        assert_eq!(cyclically_reduce(&letters_of(&[1, 2, -2, 3, -1])), letters_of(&[3]));
        assert!(cyclically_reduce(&letters_of(&[1, -1])).is_empty());
    }

    #[test]
    fn trivial_group_and_limit() {
        let rels = [letters_of(&[1, 1]), letters_of(&[1, 1, 1])];
        assert_eq!(todd_coxeter(1, &rels, 10).unwrap().order(), 1);
        // free group on one generator never closes
        assert!(matches!(todd_coxeter(1, &[], 50), Err(Error::ResourceLimit(_))));
    }
}
