//! Finite groups as explicit multiplication tables.
//!
//! Element `0` is always the identity. Every table built here passes the
//! exhaustive associativity, identity and inverse checks.

mod abelian;
mod hom;
mod subgroup;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

pub use abelian::{abelian_basis, abelian_factor_lists, abelianization, enumerate_abelian_groups, Abelianization};
pub use hom::GroupHom;
pub use subgroup::{all_subgroups, quotient, subgroup_generated, Subgroup};

use crate::algebra::ring::prime_factors;
use crate::error::{Error, Result};

/// Largest group the constructors accept by default.
pub const DEFAULT_ORDER_BOUND: usize = 512;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupTable {
    order: usize,
    mult: Arc<Vec<u32>>,
    inverse: Arc<Vec<u32>>,
    generators: Vec<usize>,
    labels: Option<Arc<Vec<String>>>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable(order {}, generators {:?})", self.order, self.generators)
    }
}

impl GroupTable {
    /// Validates a raw table: square, entries in range, identity at index 0,
    /// each row and column a permutation, associative.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::NotAGroup(format!("entry {x} in row {i} is out of range")));
                }
                mult.push(x as u32);
            }
        }
        Self::validated(n, mult, None, None)
    }

    /// Builds from a flattened table; `generators` defaults to a greedy
    /// generating set.
    pub(crate) fn validated(
        n: usize,
        mult: Vec<u32>,
        generators: Option<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        for i in 0..n {
            if mult[i] as usize != i || mult[i * n] as usize != i {
                return Err(Error::NotAGroup("element 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![u32::MAX; n];
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = mult[a * n + b] as usize;
                if seen[c] {
                    return Err(Error::NotAGroup(format!("row {a} repeats element {c}")));
                }
                seen[c] = true;
                if c == 0 {
                    inverse[a] = b as u32;
                }
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for a in 0..n {
                let c = mult[a * n + b] as usize;
                if seen[c] {
                    return Err(Error::NotAGroup(format!("column {b} repeats element {c}")));
                }
                seen[c] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a * n + b] as usize;
                let row_ab = &mult[ab * n..(ab + 1) * n];
                for c in 0..n {
                    let bc = mult[b * n + c] as usize;
                    if row_ab[c] != mult[a * n + bc] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails for ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::Dimension("one label per element required".into()));
            }
        }
        let mut g = GroupTable {
            order: n,
            mult: Arc::new(mult),
            inverse: Arc::new(inverse),
            generators: Vec::new(),
            labels: labels.map(Arc::new),
        };
        g.generators = match generators {
            Some(gens) => {
                if g.generated_by(&gens).len() != n {
                    return Err(Error::NotAGroup("given generators do not generate".into()));
                }
                gens
            }
            None => g.greedy_generators(),
        };
        Ok(g)
    }

    /// Builds a group from a closed set of elements with a multiplication.
    /// `elements[0]` must be the identity.
    pub fn from_elements<E, F>(elements: Vec<E>, mul: F, generators: Option<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self>
    where
        E: std::hash::Hash + Eq + Clone,
        F: Fn(&E, &E) -> E,
    {
        let n = elements.len();
        let index: HashMap<E, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != n {
            return Err(Error::NotAGroup("repeated element".into()));
        }
        let mut mult = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                let c = mul(a, b);
                let k = index
                    .get(&c)
                    .ok_or_else(|| Error::NotAGroup("element set is not closed".into()))?;
                mult.push(*k as u32);
            }
        }
        Self::validated(n, mult, generators, labels)
    }

    pub fn trivial() -> Self {
        cyclic(1).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g x g⁻¹`
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1u64, |acc, g| num_integer::lcm(acc, self.element_order(g) as u64))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Does every element order have only primes dividing `l`?
    pub fn is_l_torsion(&self, l: u64) -> bool {
        let allowed = prime_factors(l);
        prime_factors(self.exponent()).iter().all(|p| allowed.contains(p))
    }

    /// The distinguished generating set; group actions are given on these.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut out = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span: BTreeSet<usize> = [0].into_iter().collect();
        for g in 1..self.order {
            if !span.contains(&g) {
                gens.push(g);
                span = self.generated_by(&gens).into_iter().collect();
            }
        }
        gens
    }

    /// Writes every element as a word in the generators: `(parent, generator
    /// position)` along a breadth-first spanning tree, root 0.
    pub fn spanning_tree(&self) -> Vec<Option<(usize, usize)>> {
        let mut tree = vec![None; self.order];
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in self.generators.iter().enumerate() {
                let y = self.mul(s, x);
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = Some((x, k));
                    queue.push_back(y);
                }
            }
        }
        tree
    }

    /// Breadth-first order matching [`GroupTable::spanning_tree`].
    pub fn bfs_order(&self) -> Vec<usize> {
        let tree = self.spanning_tree();
        let mut order = vec![0usize];
        let mut i = 0;
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); self.order];
        for (y, t) in tree.iter().enumerate() {
            if let Some((x, _)) = t {
                children[*x].push(y);
            }
        }
        while i < order.len() {
            let x = order[i];
            order.extend(children[x].iter().copied());
            i += 1;
        }
        order
    }
}

/// `Z/m`, element `k` is the residue `k`, generated by `1`.
pub fn cyclic(m: usize) -> Result<GroupTable> {
    if m == 0 {
        return Err(Error::Input("cyclic group order must be positive".into()));
    }
    let mult = (0..m)
        .flat_map(|a| (0..m).map(move |b| ((a + b) % m) as u32))
        .collect();
    let gens = if m == 1 { vec![] } else { vec![1] };
    GroupTable::validated(m, mult, Some(gens), None)
}

/// `G × H`; the pair `(g, h)` has index `g·|H| + h`. Generators are those of
/// `G` followed by those of `H`.
pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Result<GroupTable> {
    let (n, m) = (g.order, h.order);
    let mut mult = Vec::with_capacity(n * m * n * m);
    for a in 0..n * m {
        for b in 0..n * m {
            let (a1, a2) = (a / m, a % m);
            let (b1, b2) = (b / m, b % m);
            mult.push((g.mul(a1, b1) * m + h.mul(a2, b2)) as u32);
        }
    }
    let gens = g
        .generators
        .iter()
        .map(|&x| x * m)
        .chain(h.generators.iter().copied())
        .collect();
    GroupTable::validated(n * m, mult, Some(gens), None)
}

/// Product of several groups, associating to the left.
pub fn product_of(groups: &[GroupTable]) -> Result<GroupTable> {
    let mut acc = GroupTable::trivial();
    for g in groups {
        acc = direct_product(&acc, g)?;
    }
    Ok(acc)
}

/// `Z/m_1 × ... × Z/m_k`.
pub fn abelian_from_factors(factors: &[u64]) -> Result<GroupTable> {
    let groups: Vec<GroupTable> = factors
        .iter()
        .map(|&m| cyclic(m as usize))
        .collect::<Result<_>>()?;
    product_of(&groups)
}

/// The group generated by permutations of `{0..degree-1}` (images lists).
pub fn permutation_group(degree: usize, gens: &[Vec<usize>]) -> Result<GroupTable> {
    let id: Vec<usize> = (0..degree).collect();
    for p in gens {
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if p.len() != degree || sorted != id {
            return Err(Error::Input("not a permutation".into()));
        }
    }
    let compose = |p: &Vec<usize>, q: &Vec<usize>| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
    let mut elements = vec![id.clone()];
    let mut seen: std::collections::HashSet<Vec<usize>> = [id].into_iter().collect();
    let mut i = 0;
    while i < elements.len() {
        for s in gens {
            let y = compose(s, &elements[i]);
            if seen.insert(y.clone()) {
                elements.push(y);
                if elements.len() > DEFAULT_ORDER_BOUND {
                    return Err(Error::Budget {
                        cells: elements.len(),
                        budget: DEFAULT_ORDER_BOUND,
                    });
                }
            }
        }
        i += 1;
    }
    elements[1..].sort();
    let gen_idx = gens
        .iter()
        .map(|s| elements.iter().position(|e| e == s).expect("generator present"))
        .collect();
    GroupTable::from_elements(elements, compose, Some(gen_idx), None)
}

pub fn symmetric(n: usize) -> Result<GroupTable> {
    if n < 2 {
        return Ok(GroupTable::trivial());
    }
    let mut cycle: Vec<usize> = (1..n).collect();
    cycle.push(0);
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    permutation_group(n, &[swap, cycle])
}

pub fn alternating(n: usize) -> Result<GroupTable> {
    if n < 3 {
        return Ok(GroupTable::trivial());
    }
    let gens: Vec<Vec<usize>> = (2..n)
        .map(|k| {
            let mut p: Vec<usize> = (0..n).collect();
            p[0] = 1;
            p[1] = k;
            p[k] = 0;
            p
        })
        .collect();
    permutation_group(n, &gens)
}

/// Symmetries of a regular `n`-gon, order `2n`.
pub fn dihedral(n: usize) -> Result<GroupTable> {
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    permutation_group(n, &[rot, refl])
}

/// The quaternion group `{±1, ±i, ±j, ±k}` as a permutation group on itself.
pub fn quaternion() -> Result<GroupTable> {
    // elements 0..8 = 1, -1, i, -i, j, -j, k, -k; left multiplication by i and j
    let i = vec![2, 3, 1, 0, 6, 7, 5, 4];
    let j = vec![4, 5, 7, 6, 1, 0, 2, 3];
    permutation_group(8, &[i, j])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_raw() -> Vec<Vec<usize>> {
        // e, r, r², s, sr, sr²
        vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 2, 0, 5, 3, 4],
            vec![2, 0, 1, 4, 5, 3],
            vec![3, 4, 5, 0, 1, 2],
            vec![4, 5, 3, 2, 0, 1],
            vec![5, 3, 4, 1, 2, 0],
        ]
    }

    #[test]
    fn constructors() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        let k = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(k.order(), 4);
        assert_eq!(k.exponent(), 2);
        let s3 = GroupTable::from_table(&s3_raw()).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn rejects_non_groups() {
        let mut t = s3_raw();
        t[1].swap(3, 4);
        assert!(GroupTable::from_table(&t).is_err());
        assert!(GroupTable::from_table(&[vec![0, 1], vec![1, 1]]).is_err());
        // a Latin square that is not associative
        let latin = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(GroupTable::from_table(&latin), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn torsion_and_exponent() {
        assert!(cyclic(4).unwrap().is_l_torsion(2));
        assert!(!cyclic(6).unwrap().is_l_torsion(2));
        assert!(cyclic(6).unwrap().is_l_torsion(6));
        assert_eq!(cyclic(6).unwrap().exponent(), 6);
    }

    #[test]
    fn small_nonabelian_orders() {
        assert_eq!(symmetric(3).unwrap().order(), 6);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        let q = quaternion().unwrap();
        assert_eq!(q.order(), 8);
        // Q8 has a unique involution
        assert_eq!((1..8).filter(|&g| q.element_order(g) == 2).count(), 1);
    }

    #[test]
    fn spanning_tree_reaches_everything() {
        let g = symmetric(4).unwrap();
        let tree = g.spanning_tree();
        assert!(tree[0].is_none());
        assert!(tree[1..].iter().all(|t| t.is_some()));
        assert_eq!(g.bfs_order().len(), 24);
    }
}
