//! Incremental integer echelon bases for sparse vectors.
//!
//! The builder keeps one basis vector per pivot index, where the pivot of a
//! vector is its smallest nonzero index and pivot entries are positive. Any
//! vector inserted afterwards is reduced against the stored pivots; Euclid
//! steps exchange it with a pivot vector when a remainder is left, so the
//! stored vectors always form a basis of the lattice spanned by everything
//! inserted.

use crate::error::Result;
use crate::scalar::{ext_gcd, Scalar};

pub type SparseVec<T> = Vec<(usize, T)>;

#[derive(Debug, Clone)]
pub struct EchelonBuilder<T> {
    dim: usize,
    pivot_of: Vec<Option<usize>>,
    vectors: Vec<SparseVec<T>>,
}

impl<T: Scalar> EchelonBuilder<T> {
    pub fn new(dim: usize) -> Self {
        EchelonBuilder {
            dim,
            pivot_of: vec![None; dim],
            vectors: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Adds a vector (sorted by index, no zeros) to the lattice. Returns
    /// whether the rank grew.
    pub fn insert(&mut self, mut x: SparseVec<T>) -> Result<bool> {
        loop {
            let Some((r, b)) = x.first().cloned() else {
                return Ok(false);
            };
            match self.pivot_of[r] {
                None => {
                    if b.is_negative() {
                        for e in &mut x {
                            e.1 = -e.1.clone();
                        }
                    }
                    self.pivot_of[r] = Some(self.vectors.len());
                    self.vectors.push(x);
                    return Ok(true);
                }
                Some(k) => {
                    let a = self.vectors[k][0].1.clone();
                    // one Euclid step: subtract the nearest multiple, and if
                    // a remainder is left it becomes the new pivot vector
                    let q = nearest_quotient(&b, &a);
                    x = axpy(&x, &-q, &self.vectors[k])?;
                    if x.first().is_some_and(|e| e.0 == r) {
                        std::mem::swap(&mut self.vectors[k], &mut x);
                        let v = &mut self.vectors[k];
                        if v[0].1.is_negative() {
                            for e in v.iter_mut() {
                                e.1 = -e.1.clone();
                            }
                        }
                    }
                }
            }
        }
    }

    /// Adds a vector to the rational span only: stored vectors are kept
    /// primitive, so the lattice they generate may be smaller than the one
    /// inserted, but the kernel they cut out is the same and entries stay
    /// small. Do not mix with [`EchelonBuilder::insert`].
    pub fn insert_span(&mut self, mut x: SparseVec<T>) -> Result<bool> {
        loop {
            make_primitive(&mut x);
            let Some((r, b)) = x.first().cloned() else {
                return Ok(false);
            };
            match self.pivot_of[r] {
                None => {
                    if b.is_negative() {
                        for e in &mut x {
                            e.1 = -e.1.clone();
                        }
                    }
                    self.pivot_of[r] = Some(self.vectors.len());
                    self.vectors.push(x);
                    return Ok(true);
                }
                Some(k) => {
                    let a = self.vectors[k][0].1.clone();
                    let g = a.gcd(&b);
                    x = lin2(&(a / g.clone()), &x, &-(b / g), &self.vectors[k])?;
                }
            }
        }
    }

    /// Stored basis vectors in insertion order of their pivots.
    pub fn basis(&self) -> impl Iterator<Item = &SparseVec<T>> {
        self.vectors.iter()
    }

    pub fn pivot_vector(&self, row: usize) -> Option<&SparseVec<T>> {
        self.pivot_of[row].map(|k| &self.vectors[k])
    }

    /// Rows whose pivot entry is 1.
    pub fn unit_pivot_rows(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&r| {
                self.pivot_vector(r)
                    .is_some_and(|v| v[0].1.is_one())
            })
            .collect()
    }

    /// Does the lattice contain `x`?
    pub fn contains(&self, x: &SparseVec<T>) -> Result<bool> {
        let mut x = x.clone();
        while let Some((r, b)) = x.first().cloned() {
            let Some(v) = self.pivot_vector(r) else {
                return Ok(false);
            };
            if !b.is_multiple_of(&v[0].1) {
                return Ok(false);
            }
            let q = b / v[0].1.clone();
            x = axpy(&x, &-q, v)?;
        }
        Ok(true)
    }
}

/// Echelon basis of a lattice known to contain `E·Z^dim`, computed with all
/// entries reduced modulo `E`. The stored vectors together with `E·e_i` for
/// every `i` generate the lattice spanned by everything inserted.
#[derive(Debug, Clone)]
pub struct ModEchelon<T> {
    modulus: T,
    pivot_of: Vec<Option<usize>>,
    vectors: Vec<SparseVec<T>>,
}

impl<T: Scalar> ModEchelon<T> {
    pub fn new(dim: usize, modulus: T) -> Self {
        ModEchelon {
            modulus,
            pivot_of: vec![None; dim],
            vectors: Vec::new(),
        }
    }

    fn reduce(&self, x: &mut SparseVec<T>) {
        for e in x.iter_mut() {
            e.1 = e.1.modulo(&self.modulus);
        }
        x.retain(|e| !e.1.is_zero());
    }

    pub fn insert(&mut self, mut x: SparseVec<T>) -> Result<()> {
        loop {
            self.reduce(&mut x);
            let Some((r, b)) = x.first().cloned() else {
                return Ok(());
            };
            match self.pivot_of[r] {
                None => {
                    self.pivot_of[r] = Some(self.vectors.len());
                    self.vectors.push(x);
                    return Ok(());
                }
                Some(k) => {
                    let a = self.vectors[k][0].1.clone();
                    if b.is_multiple_of(&a) {
                        x = axpy(&x, &-(b / a), &self.vectors[k])?;
                    } else {
                        let (g, s, t) = ext_gcd(&a, &b)?;
                        let v = &self.vectors[k];
                        let mut pivot = lin2(&s, v, &t, &x)?;
                        let rest = lin2(&(b / g.clone()), v, &-(a / g), &x)?;
                        self.reduce(&mut pivot);
                        self.vectors[k] = pivot;
                        x = rest;
                    }
                }
            }
        }
    }

    /// Generators: the stored vectors followed by `E·e_i` for every `i`.
    pub fn generators(self) -> Vec<SparseVec<T>> {
        let dim = self.pivot_of.len();
        let mut out = self.vectors;
        out.extend((0..dim).map(|i| vec![(i, self.modulus.clone())]));
        out
    }
}

/// `x + c * y` on sorted sparse vectors.
pub fn axpy<T: Scalar>(x: &SparseVec<T>, c: &T, y: &SparseVec<T>) -> Result<SparseVec<T>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, c.mul_c(&y[j].1)?));
            j += 1;
        } else {
            let v = x[i].1.fma_c(c, &y[j].1)?;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|e| !e.1.is_zero());
    Ok(out)
}

fn lin2<T: Scalar>(a: &T, x: &SparseVec<T>, b: &T, y: &SparseVec<T>) -> Result<SparseVec<T>> {
    let ax: SparseVec<T> = x
        .iter()
        .map(|(i, v)| Ok((*i, v.mul_c(a)?)))
        .collect::<Result<_>>()?;
    axpy(&ax, b, y)
}

/// `b / a` rounded to the nearest integer, so the remainder is at most
/// `|a| / 2` in absolute value.
fn nearest_quotient<T: Scalar>(b: &T, a: &T) -> T {
    let two = T::one() + T::one();
    let q = b.div_floor(a);
    let r = b.clone() - q.clone() * a.clone();
    if (r.clone() * two).abs() > a.abs() {
        q + T::one()
    } else {
        q
    }
}

fn make_primitive<T: Scalar>(x: &mut SparseVec<T>) {
    let mut g = T::zero();
    for (_, v) in x.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() {
        for e in x.iter_mut() {
            e.1 = e.1.clone() / g.clone();
        }
    }
}

pub fn to_sparse<T: Scalar>(v: &[T]) -> SparseVec<T> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}
