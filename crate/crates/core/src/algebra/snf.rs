//! Smith normal form and the kernel / solve routines built on it.

use crate::algebra::mat::Mat;
use crate::algebra::ring::RingSpec;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which transforms to accumulate while diagonalizing.
#[derive(Debug, Clone, Copy, Default)]
pub struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const ALL: Track = Track {
        u: true,
        u_inv: true,
        v: true,
        v_inv: true,
    };
    pub const LEFT: Track = Track {
        u: true,
        u_inv: true,
        v: false,
        v_inv: false,
    };
    pub const RIGHT: Track = Track {
        u: false,
        u_inv: false,
        v: true,
        v_inv: false,
    };
}

/// Integer Smith form `U A V = D` with unimodular `U`, `V`.
///
/// `diag` holds the nonzero diagonal `d_0 | d_1 | ... | d_{rank-1}`, all
/// positive.
#[derive(Debug, Clone)]
pub struct IntegerSmith<T> {
    pub diag: Vec<T>,
    pub u: Option<Mat<T>>,
    pub u_inv: Option<Mat<T>>,
    pub v: Option<Mat<T>>,
    pub v_inv: Option<Mat<T>>,
}

impl<T: Scalar> IntegerSmith<T> {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

struct Work<'a, T> {
    a: &'a mut Mat<T>,
    u: Option<Mat<T>>,
    u_inv: Option<Mat<T>>,
    v: Option<Mat<T>>,
    v_inv: Option<Mat<T>>,
}

impl<T: Scalar> Work<'_, T> {
    /// row[dst] += q row[src]
    fn row_op(&mut self, dst: usize, src: usize, q: &T) -> Result<()> {
        self.a.add_row_multiple(dst, src, q)?;
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, q)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col_multiple(src, dst, &-q.clone())?;
        }
        Ok(())
    }

    /// col[dst] += q col[src]
    fn col_op(&mut self, dst: usize, src: usize, q: &T) -> Result<()> {
        self.a.add_col_multiple(dst, src, q)?;
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, q)?;
        }
        if let Some(vi) = &mut self.v_inv {
            vi.add_row_multiple(src, dst, &-q.clone())?;
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i);
        }
    }
}

/// Diagonalizes `a` in place. Pivoting always takes the nonzero entry of
/// smallest absolute value in the active block.
pub fn integer_smith<T: Scalar>(a: &Mat<T>, track: Track) -> Result<IntegerSmith<T>> {
    let (m, n) = (a.rows(), a.cols());
    let mut a = a.clone();
    let mut w = Work {
        a: &mut a,
        u: track.u.then(|| Mat::identity(m)),
        u_inv: track.u_inv.then(|| Mat::identity(m)),
        v: track.v.then(|| Mat::identity(n)),
        v_inv: track.v_inv.then(|| Mat::identity(n)),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_in_block(w.a, t, t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = w.a[(i, t)].div_floor(&p);
                w.row_op(i, t, &-q)?;
                if !w.a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = w.a[(t, j)].div_floor(&p);
                w.col_op(j, t, &-q)?;
                if !w.a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a smaller remainder now sits in row t or column t
                let mut best = (t, t);
                for i in t + 1..m {
                    let x = &w.a[(i, t)];
                    if !x.is_zero() && x.abs() < w.a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    let x = &w.a[(t, j)];
                    if !x.is_zero() && x.abs() < w.a[best].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // divisibility of the remaining block
            let mut bad = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !w.a[(i, j)].is_multiple_of(&p) {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => w.row_op(t, i, &T::one())?,
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        diag.push(w.a[(t, t)].clone());
        t += 1;
    }
    Ok(IntegerSmith {
        diag,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    })
}

fn smallest_in_block<T: Scalar>(a: &Mat<T>, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in r0..a.rows() {
        for (j, x) in a.row(i).iter().enumerate().skip(c0) {
            if x.is_zero() {
                continue;
            }
            match best {
                Some(b) if a[b].abs() <= x.abs() => {}
                _ => {
                    if x.is_one() || (-x.clone()).is_one() {
                        return Some((i, j));
                    }
                    best = Some((i, j));
                }
            }
        }
    }
    best
}

/// Smith decomposition over a ring: `U A V = diag(unit_scale) * D` with `D`
/// normalized for the ring.
///
/// Over `Z[1/l]` the entries of `D` have every prime dividing `l` stripped;
/// the stripped unit factors are kept in `unit_scale` so that `U` and `V`
/// stay integral. `diag(unit_scale)^-1 U` is then a ring-unimodular matrix
/// realizing `U' A V = D` exactly.
#[derive(Debug, Clone)]
pub struct SmithDecomposition<T> {
    pub u: Mat<T>,
    pub d: Mat<T>,
    pub v: Mat<T>,
    pub unit_scale: Vec<T>,
    pub ring: RingSpec,
}

impl<T: Scalar> SmithDecomposition<T> {
    /// Nonzero normalized diagonal entries.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    /// Re-checks the defining identity by exact multiplication.
    pub fn verify(&self, a: &Mat<T>) -> Result<bool> {
        let lhs = self.u.mul(a)?.mul(&self.v)?;
        let mut rhs = self.d.clone();
        for (i, s) in self.unit_scale.iter().enumerate() {
            for j in 0..rhs.cols() {
                rhs[(i, j)] = rhs[(i, j)].mul_c(s)?;
            }
        }
        if lhs != rhs {
            return Ok(false);
        }
        let du = self.u.det()?;
        let dv = self.v.det()?;
        Ok(du.abs().is_one() && dv.abs().is_one())
    }
}

pub fn snf<T: Scalar>(a: &Mat<T>, ring: RingSpec) -> Result<SmithDecomposition<T>> {
    let s = integer_smith(
        a,
        Track {
            u: true,
            v: true,
            ..Track::default()
        },
    )?;
    let mut d = Mat::zeros(a.rows(), a.cols());
    let mut unit_scale = vec![T::one(); a.rows()];
    for (i, x) in s.diag.iter().enumerate() {
        let stripped = ring.strip(x);
        unit_scale[i] = x.clone() / stripped.clone();
        d[(i, i)] = stripped;
    }
    Ok(SmithDecomposition {
        u: s.u.expect("tracked"),
        d,
        v: s.v.expect("tracked"),
        unit_scale,
        ring,
    })
}

/// A basis (as columns) of `{x : A x = 0}`. The basis is saturated over `Z`,
/// hence also a basis over `Z[1/l]`.
pub fn kernel<T: Scalar>(a: &Mat<T>) -> Result<Mat<T>> {
    if a.cols() == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    let mut a = a.clone();
    let n = a.cols();
    let mut v = Mat::identity(n);
    // column echelon form: each row gets one pivot column, found by Euclid
    // steps on the active columns; the untouched columns of V span the kernel
    let mut t = 0;
    for i in 0..a.rows() {
        if t == n {
            break;
        }
        loop {
            let Some(p) = (t..n)
                .filter(|&j| !a[(i, j)].is_zero())
                .min_by(|&x, &y| a[(i, x)].abs().cmp(&a[(i, y)].abs()))
            else {
                break;
            };
            a.swap_cols(t, p);
            v.swap_cols(t, p);
            let pivot = a[(i, t)].clone();
            let mut done = true;
            for j in t + 1..n {
                if a[(i, j)].is_zero() {
                    continue;
                }
                let q = -a[(i, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &q)?;
                v.add_col_multiple(j, t, &q)?;
                done &= a[(i, j)].is_zero();
            }
            if done {
                t += 1;
                break;
            }
        }
    }
    let idx: Vec<usize> = (t..n).collect();
    Ok(v.select_cols(&idx))
}

pub fn densify<T: Scalar>(v: &[(usize, T)], len: usize) -> Vec<T> {
    let mut out = vec![T::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Precomputed solver for integer systems `A x = b` with a fixed `A`.
#[derive(Debug, Clone)]
pub struct Solver<T> {
    rows: usize,
    cols: usize,
    smith: IntegerSmith<T>,
}

impl<T: Scalar> Solver<T> {
    pub fn new(a: &Mat<T>) -> Result<Self> {
        let smith = integer_smith(
            a,
            Track {
                u: true,
                v: true,
                ..Track::default()
            },
        )?;
        Ok(Solver {
            rows: a.rows(),
            cols: a.cols(),
            smith,
        })
    }

    /// An integer solution, if one exists.
    pub fn solve(&self, b: &[T]) -> Result<Option<Vec<T>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension("right-hand side length".into()));
        }
        let y = self.smith.u.as_ref().expect("tracked").mul_vec(b)?;
        let r = self.smith.rank();
        let mut z = vec![T::zero(); self.cols];
        for i in 0..self.rows {
            if i < r {
                let d = &self.smith.diag[i];
                if !y[i].is_multiple_of(d) {
                    return Ok(None);
                }
                z[i] = y[i].clone() / d.clone();
            } else if !y[i].is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(self.smith.v.as_ref().expect("tracked").mul_vec(&z)?))
    }
}

/// Solves `A x = b` over the integers.
pub fn solve<T: Scalar>(a: &Mat<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    Solver::new(a)?.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat<i64> {
        Mat::from_i64_rows(rows)
    }

    /// Independent oracle: invariant factors from gcds of k x k minors.
    fn determinantal_divisors(a: &Mat<i64>) -> Vec<i64> {
        use num_integer::Integer;
        let (r, c) = (a.rows(), a.cols());
        let mut out = vec![];
        let mut prev = 1i64;
        for k in 1..=r.min(c) {
            let mut g = 0i64;
            for rows in subsets(r, k) {
                for cols in subsets(c, k) {
                    let sub = a.select_rows(&rows).select_cols(&cols);
                    g = g.gcd(&sub.det().unwrap());
                }
            }
            if g == 0 {
                break;
            }
            out.push(g / prev);
            prev = g;
        }
        out
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    #[test]
    fn snf_examples() {
        let a = m(&[&[2, 4], &[6, 8]]);
        let s = snf(&a, RingSpec::Integers).unwrap();
        assert_eq!(s.diagonal(), vec![2, 4]);
        assert!(s.verify(&a).unwrap());
        assert_eq!(determinantal_divisors(&a), vec![2, 4]);

        let id = Mat::<i64>::identity(3);
        assert_eq!(snf(&id, RingSpec::Integers).unwrap().d, id);

        let six = m(&[&[6]]);
        let s = snf(&six, RingSpec::Inverted(3)).unwrap();
        assert_eq!(s.d, m(&[&[2]]));
        assert!(s.verify(&six).unwrap());
    }

    #[test]
    fn snf_empty() {
        let a = Mat::<i64>::zeros(0, 3);
        let s = snf(&a, RingSpec::Integers).unwrap();
        assert!(s.diagonal().is_empty());
        assert_eq!(s.v.rows(), 3);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&m(&[&[1, 1]])).unwrap();
        assert_eq!(k.cols(), 1);
        assert_eq!(k[(0, 0)], -k[(1, 0)]);
        assert_eq!(k[(0, 0)].abs(), 1);
        assert_eq!(kernel(&Mat::<i64>::identity(3)).unwrap().cols(), 0);
        assert_eq!(kernel(&m(&[&[2, 4], &[6, 8]])).unwrap().cols(), 0);
        let tall = m(&[&[1, 2], &[2, 4], &[3, 6], &[-1, -2]]);
        let k = kernel(&tall).unwrap();
        assert_eq!(k.cols(), 1);
        assert!(tall.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn solve_integer_system() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve(&a, &[4, 9]).unwrap(), Some(vec![2, 3]));
        assert_eq!(solve(&a, &[1, 0]).unwrap(), None);
    }

    #[test]
    fn tracked_inverses() {
        let a = m(&[&[3, 5, 1], &[7, -2, 4], &[0, 6, 9]]);
        let s = integer_smith(&a, Track::ALL).unwrap();
        let (u, ui, v, vi) = (
            s.u.unwrap(),
            s.u_inv.unwrap(),
            s.v.unwrap(),
            s.v_inv.unwrap(),
        );
        assert_eq!(u.mul(&ui).unwrap(), Mat::identity(3));
        assert_eq!(v.mul(&vi).unwrap(), Mat::identity(3));
        assert_eq!(determinantal_divisors(&a), s.diag);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Mat<i64>> {
            (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-6i64..=6, r * c)
                    .prop_map(move |d| Mat::from_vec(r, c, d).unwrap())
            })
        }

        proptest! {
            #[test]
            fn snf_identity_holds(a in small_matrix(), l in prop_oneof![Just(0u64), Just(2), Just(6)]) {
                let ring = RingSpec::with_inverted(l);
                let s = snf(&a, ring).unwrap();
                prop_assert!(s.verify(&a).unwrap());
                let d = s.diagonal();
                for w in d.windows(2) {
                    prop_assert!(w[1] % w[0] == 0);
                }
                for x in &d {
                    prop_assert!(*x > 0);
                    prop_assert_eq!(ring.strip(x), *x);
                }
            }

            #[test]
            fn snf_matches_minors(a in small_matrix()) {
                let s = snf(&a, RingSpec::Integers).unwrap();
                prop_assert_eq!(s.diagonal(), determinantal_divisors(&a));
            }

            #[test]
            fn kernel_is_annihilated(a in small_matrix()) {
                let k = kernel(&a).unwrap();
                if k.cols() > 0 {
                    prop_assert!(a.mul(&k).unwrap().is_zero());
                }
                let rank = integer_smith(&a, Track::default()).unwrap().rank();
                prop_assert_eq!(k.cols(), a.cols() - rank);
            }
        }
    }
}
