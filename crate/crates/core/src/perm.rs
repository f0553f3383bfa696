//! Explicit permutations of `0..n` and brute-force group computations.
//!
//! These are the abstract-group oracles; nothing here knows about shifts.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A permutation stored by images: `p(i) = images[i]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Self { images })
    }

    /// Product of cycles on `0..n`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        for c in cycles {
            if c.iter().any(|&i| i >= n) {
                return Err(Error::InvalidPermutation(format!("cycle {c:?} out of range")));
            }
        }
        // the rightmost cycle acts first
        let mut result = Self::identity(n);
        for c in cycles {
            let mut p = Self::identity(n);
            for (k, &i) in c.iter().enumerate() {
                p.images[i] = c[(k + 1) % c.len()];
            }
            result = result.then_after(&p);
        }
        Self::from_images(result.images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn then_after(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut result = Perm::identity(self.degree());
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.then_after(&sq);
            }
            sq = sq.then_after(&sq);
            k >>= 1;
        }
        result
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn moved_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().enumerate().filter(|(i, j)| i != *j).map(|(i, _)| i)
    }

    /// Order as lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// `a^{-1} b^{-1} a b`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.inverse().then_after(&b.inverse()).then_after(a).then_after(b)
    }

    /// `b^{-1} a b`.
    pub fn conjugate(a: &Perm, b: &Perm) -> Perm {
        b.inverse().then_after(a).then_after(b)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.images[i];
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// All elements of `<gens>`, by breadth-first closure. Fails beyond `limit` elements.
pub fn closure(gens: &[Perm], degree: usize, limit: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut elems = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.then_after(&g);
            if seen.insert(h.clone()) {
                if seen.len() > limit {
                    return Err(Error::InvalidArgument(format!("group exceeds {limit} elements")));
                }
                elems.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(elems)
}

pub fn group_order(gens: &[Perm], degree: usize, limit: usize) -> Result<usize> {
    closure(gens, degree, limit).map(|e| e.len())
}

/// Commutator subgroup of the group with the given elements, as an element list.
pub fn derived_subgroup(elems: &[Perm], degree: usize, limit: usize) -> Result<Vec<Perm>> {
    let mut gens: HashSet<Perm> = HashSet::new();
    for a in elems {
        for b in elems {
            let c = Perm::commutator(a, b);
            if !c.is_identity() {
                gens.insert(c);
            }
        }
    }
    let gens: Vec<Perm> = gens.into_iter().collect();
    closure(&gens, degree, limit)
}

/// Sizes along the derived series, stopping at the trivial group or when it stabilizes.
pub fn derived_series_orders(gens: &[Perm], degree: usize, limit: usize) -> Result<Vec<usize>> {
    let mut g = closure(gens, degree, limit)?;
    let mut orders = vec![g.len()];
    while g.len() > 1 {
        let d = derived_subgroup(&g, degree, limit)?;
        if d.len() == g.len() {
            break;
        }
        orders.push(d.len());
        g = d;
    }
    Ok(orders)
}

/// Normal closure of `elems` in `<gens>`.
pub fn normal_closure(elems: &[Perm], gens: &[Perm], degree: usize, limit: usize) -> Result<Vec<Perm>> {
    let mut conj_gens: Vec<Perm> = elems.to_vec();
    let mut seen: HashSet<Perm> = conj_gens.iter().cloned().collect();
    let mut frontier = conj_gens.clone();
    while let Some(x) = frontier.pop() {
        for s in gens {
            for c in [Perm::conjugate(&x, s), Perm::conjugate(&x, &s.inverse())] {
                if seen.insert(c.clone()) {
                    if seen.len() > limit {
                        return Err(Error::InvalidArgument("conjugacy class too large".into()));
                    }
                    conj_gens.push(c.clone());
                    frontier.push(c);
                }
            }
        }
    }
    closure(&conj_gens, degree, limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_and_order() {
        let p = Perm::from_cycles(6, &[vec![0, 1, 2], vec![3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.apply(2), 0);
        assert_eq!(p.pow(6), Perm::identity(6));
        assert_eq!(p.pow(-1), p.inverse());
        assert!(Perm::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn cycles_compose_right_to_left() {
        // (0 1)(1 2): apply (1 2) first, so 1 -> 2 -> 2 and 2 -> 1 -> 0.
        let p = Perm::from_cycles(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(p.images(), &[1, 2, 0]);
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        let a = Perm::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let b = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(group_order(&[a, b], 5, 1000).unwrap(), 60);
        let t = Perm::from_cycles(4, &[vec![0, 1]]).unwrap();
        let c = Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(group_order(&[t.clone(), c.clone()], 4, 1000).unwrap(), 24);
        // S4 -> A4 -> V4 -> 1
        assert_eq!(derived_series_orders(&[t, c], 4, 1000).unwrap(), vec![24, 12, 4, 1]);
    }

    #[test]
    fn normal_closure_of_three_cycle() {
        let a = Perm::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let b = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        let n = normal_closure(&[a.clone()], &[a, b], 5, 1000).unwrap();
        assert_eq!(n.len(), 60);
    }
}
