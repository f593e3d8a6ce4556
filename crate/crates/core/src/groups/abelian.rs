use crate::algebra::mat::Mat;
use crate::algebra::module::PresentedModule;
use crate::algebra::ring::{prime_factors, RingSpec};
use crate::error::{Error, Result};
use crate::groups::{abelian_from_factors, quotient, subgroup_generated, GroupHom, GroupTable, DEFAULT_ORDER_BOUND};
use crate::scalar::Scalar;

/// `G/[G, G]` as a quotient table, a projection, and a presentation over `Z`
/// whose ambient basis is the generating set of the quotient.
#[derive(Clone)]
pub struct Abelianization<T> {
    pub module: PresentedModule<T>,
    pub projection: GroupHom,
    pub quotient: GroupTable,
    /// Ambient coordinates of every element of the quotient.
    pub coords: Vec<Vec<T>>,
}

impl<T: Scalar> Abelianization<T> {
    /// Ambient coordinates of the image of `g ∈ G`.
    pub fn coords_of(&self, g: usize) -> &[T] {
        &self.coords[self.projection.apply(g)]
    }

    /// Quotient element with the given ambient coordinates.
    pub fn element_of(&self, x: &[T]) -> Result<usize> {
        let q = &self.quotient;
        let mut acc = 0;
        for (i, &s) in q.generators().iter().enumerate() {
            let ord = T::from_usize_c(q.element_order(s));
            let k = x[i].modulo(&ord).to_u64().ok_or(Error::Overflow)?;
            acc = q.mul(acc, q.pow(s, k));
        }
        Ok(acc)
    }
}

pub fn abelianization<T: Scalar>(g: &GroupTable) -> Result<Abelianization<T>> {
    let n = g.order();
    let mut comms: Vec<usize> = Vec::new();
    let mut seen = vec![false; n];
    for a in 0..n {
        for b in 0..n {
            let c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    let derived = subgroup_generated(g, &comms)?;
    let (q, projection) = quotient(g, &derived)?;
    let k = q.generators().len();
    let mut coords: Vec<Option<Vec<T>>> = vec![None; q.order()];
    coords[0] = Some(vec![T::zero(); k]);
    let mut relations: Vec<Vec<T>> = Vec::new();
    for x in q.bfs_order() {
        let cx = coords[x].clone().expect("visited in order");
        for (i, &s) in q.generators().iter().enumerate() {
            let y = q.mul(x, s);
            let mut step = cx.clone();
            step[i] = step[i].add_c(&T::one())?;
            match &coords[y] {
                None => coords[y] = Some(step),
                Some(cy) => {
                    let rel: Vec<T> = step
                        .iter()
                        .zip(cy)
                        .map(|(a, b)| a.sub_c(b))
                        .collect::<Result<_>>()?;
                    if rel.iter().any(|v| !v.is_zero()) && !relations.contains(&rel) {
                        relations.push(rel);
                    }
                }
            }
        }
    }
    let module = PresentedModule::new(RingSpec::Integers, Mat::from_cols(&relations, k)?)?;
    Ok(Abelianization {
        module,
        projection,
        quotient: q,
        coords: coords.into_iter().map(|c| c.expect("reached")).collect(),
    })
}

/// A basis `(element, order)` of an abelian group: `G` is the internal
/// direct sum of the cyclic subgroups, orders form a divisibility chain.
pub fn abelian_basis(g: &GroupTable) -> Result<Vec<(usize, u64)>> {
    if !g.is_abelian() {
        return Err(Error::Precondition("group is not abelian".into()));
    }
    let ab = abelianization::<i64>(g)?;
    let from = ab.module.from_normal();
    let mut out = Vec::new();
    for (j, f) in ab.module.invariant_factors().iter().enumerate() {
        let q_elem = ab.element_of(&from.col(j))?;
        // for abelian G the projection is a bijection
        let elem = ab
            .projection
            .images()
            .iter()
            .position(|&x| x == q_elem)
            .expect("surjective");
        out.push((elem, *f as u64));
    }
    Ok(out)
}

/// One group per isomorphism class of abelian groups of order at most
/// `max_order`, with invariant factors; ordered by order, cyclic first.
pub fn enumerate_abelian_groups(max_order: usize) -> Result<Vec<(GroupTable, Vec<u64>)>> {
    if max_order > DEFAULT_ORDER_BOUND {
        return Err(Error::Budget {
            cells: max_order,
            budget: DEFAULT_ORDER_BOUND,
        });
    }
    let mut out = Vec::new();
    for n in 1..=max_order as u64 {
        for factors in abelian_factor_lists(n) {
            out.push((abelian_from_factors(&factors)?, factors));
        }
    }
    Ok(out)
}

/// Invariant factor lists (ascending divisibility chains) of all abelian
/// groups of order `n`.
pub fn abelian_factor_lists(n: u64) -> Vec<Vec<u64>> {
    let mut primes = prime_factors(n);
    primes.dedup();
    let mut per_prime: Vec<(u64, Vec<Vec<u32>>)> = Vec::new();
    for p in primes {
        let mut e = 0;
        let mut m = n;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        per_prime.push((p, partitions(e, e)));
    }
    let mut lists: Vec<Vec<u64>> = vec![vec![]];
    for (p, parts) in per_prime {
        let mut next = Vec::new();
        for acc in &lists {
            for part in &parts {
                // largest factor first while combining
                let len = acc.len().max(part.len());
                let mut merged = vec![1u64; len];
                for (k, v) in acc.iter().enumerate() {
                    merged[k] *= v;
                }
                for (k, &ex) in part.iter().enumerate() {
                    merged[k] *= p.pow(ex);
                }
                next.push(merged);
            }
        }
        lists = next;
    }
    lists
        .into_iter()
        .map(|mut l| {
            l.retain(|&x| x > 1);
            l.reverse();
            l
        })
        .collect()
}

/// Partitions of `n` into parts at most `max`, descending, in reverse
/// lexicographic order (`[n]` first).
fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
