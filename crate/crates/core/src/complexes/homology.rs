//! Homology of a sparse complex with generator tracking.
//!
//! All lattices are computed over `Z`. For `R = Z[1/l]` this is exact: each
//! degree is a localization of the integral complex, localization is exact,
//! and the final presentation is normalized over `R`.
//!
//! At degree `k` let `B'` be the lattice spanned by the incoming boundaries
//! and the relations of `C_k`. Coordinates where an echelon basis of `B'` has
//! a unit pivot are eliminated; the rest (`F`) carry the computation. A cycle
//! `x` is reduced to `red(x) ∈ Z^F` with `x ≡ red(x)` modulo `B'`, and the
//! homology is `Y / red(B')`, where `Y ⊆ Z^F` is the lattice of reduced
//! cycles.

use std::sync::Arc;

use crate::algebra::lattice::{axpy, EchelonBuilder, ModEchelon, SparseVec};
use crate::algebra::mat::{Mat, SparseMat};
use crate::algebra::module::{ModuleMap, PresentedModule};
use crate::algebra::snf::{densify, kernel, Solver};
use crate::complexes::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const NOT_FREE: usize = usize::MAX;

enum Cycles<T> {
    /// Every vector of `Z^F` is a cycle.
    All,
    Basis { y: Mat<T>, solver: Solver<T> },
}

impl<T: Scalar> Cycles<T> {
    fn width(&self, f_len: usize) -> usize {
        match self {
            Cycles::All => f_len,
            Cycles::Basis { y, .. } => y.cols(),
        }
    }

    fn coords(&self, v: &[T]) -> Result<Option<Vec<T>>> {
        match self {
            Cycles::All => Ok(Some(v.to_vec())),
            Cycles::Basis { solver, .. } => solver.solve(v),
        }
    }

    fn embed(&self, c: &[T]) -> Result<Vec<T>> {
        match self {
            Cycles::All => Ok(c.to_vec()),
            Cycles::Basis { y, .. } => y.mul_vec(c),
        }
    }
}

struct Reducer<T> {
    ambient: usize,
    /// Position in `F` of every ambient coordinate, or `NOT_FREE`.
    free_pos: Vec<usize>,
    f_len: usize,
    /// For eliminated coordinates `r`: `e_r ≡ −unit[r]` modulo `B'`, as a
    /// vector on `F`.
    unit: Vec<Option<Vec<(usize, T)>>>,
    cycles: Cycles<T>,
    /// Cycle-basis coordinates to normal-form coordinates.
    to_normal: Mat<T>,
}

impl<T: Scalar> Reducer<T> {
    fn reduce(&self, x: &[T]) -> Result<Vec<T>> {
        let mut out = vec![T::zero(); self.f_len];
        for (i, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let p = self.free_pos[i];
            if p != NOT_FREE {
                out[p] = out[p].add_c(v)?;
            } else if let Some(u) = &self.unit[i] {
                for (j, c) in u {
                    out[*j] = out[*j].sub_c(&c.mul_c(v)?)?;
                }
            }
        }
        Ok(out)
    }
}

/// `H_k` of a complex: the module in normal form, cycle representatives of
/// its generators, and a projection from cycles onto normal coordinates.
#[derive(Clone)]
pub struct HomologySummary<T> {
    pub degree: usize,
    module: PresentedModule<T>,
    lift: SparseMat<T>,
    reducer: Arc<Reducer<T>>,
}

impl<T: Scalar> std::fmt::Debug for HomologySummary<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "H_{} = {:?}", self.degree, self.module)
    }
}

impl<T: Scalar> HomologySummary<T> {
    pub fn module(&self) -> &PresentedModule<T> {
        &self.module
    }

    pub fn invariant_factors(&self) -> &[T] {
        self.module.invariant_factors()
    }

    pub fn free_rank(&self) -> usize {
        self.module.free_rank()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    /// Column `j` is a cycle representing normal generator `j`.
    pub fn lift(&self) -> &SparseMat<T> {
        &self.lift
    }

    /// Normal-form coordinates of the class of a cycle; torsion coordinates
    /// are reduced. Fails with `NotACycle` otherwise.
    pub fn project(&self, x: &[T]) -> Result<Vec<T>> {
        let r = &self.reducer;
        if x.len() != r.ambient {
            return Err(Error::Dimension("chain vector length".into()));
        }
        let red = r.reduce(x)?;
        let c = r.cycles.coords(&red)?.ok_or(Error::NotACycle)?;
        let mut out = r.to_normal.mul_vec(&c)?;
        for (v, f) in out.iter_mut().zip(self.module.invariant_factors()) {
            *v = v.modulo(f);
        }
        Ok(out)
    }
}

pub fn homology<T: Scalar>(c: &ChainComplex<T>, k: usize, budget: usize) -> Result<HomologySummary<T>> {
    if k > c.top_degree() {
        return Err(Error::TopDegree {
            degree: k,
            top: c.top_degree(),
        });
    }
    let incoming = c.incoming(k)?;
    let (outgoing, target) = c.outgoing(k)?;
    let n = c.rank(k);

    let mut columns: Vec<SparseVec<T>> = incoming.columns;
    for (i, f) in c.relations(k) {
        columns.push(vec![(*i, f.clone())]);
    }
    let elim = eliminate_units(n, columns)?;

    let mut free_pos = vec![NOT_FREE; n];
    let mut f_len = 0;
    for i in 0..n {
        if !elim.eliminated[i] {
            free_pos[i] = f_len;
            f_len += 1;
        }
    }
    Mat::<T>::check_budget(f_len, f_len, budget)?;

    // back-substitute, last pivot first: e_i ≡ −unit[i] modulo B'
    let mut unit: Vec<Option<Vec<(usize, T)>>> = vec![None; n];
    for (i, s, rest) in elim.pivots.iter().rev() {
        let mut acc: SparseVec<T> = Vec::new();
        for (r, a) in rest {
            if free_pos[*r] != NOT_FREE {
                acc = axpy(&acc, a, &vec![(free_pos[*r], T::one())])?;
            } else {
                let u = unit[*r].as_ref().expect("eliminated later");
                acc = axpy(&acc, &-a.clone(), u)?;
            }
        }
        if !s.is_one() {
            for e in &mut acc {
                e.1 = -e.1.clone();
            }
        }
        unit[*i] = Some(acc);
    }

    let reducer_core = Reducer {
        ambient: n,
        free_pos,
        f_len,
        unit,
        cycles: Cycles::All,
        to_normal: Mat::zeros(0, 0),
    };

    let cycles = cycle_lattice(&reducer_core, &outgoing, target.map(|t| c.factor_lookup(t)), budget)?;
    let width = cycles.width(f_len);

    // presentation of Y / red(B'); the leftover columns live on F already
    let remaining = elim
        .remaining
        .into_iter()
        .map(|col| col.into_iter().map(|(r, a)| (reducer_core.free_pos[r], a)).collect());
    let generators: Vec<SparseVec<T>> = match torsion_exponent(c.relations(k), &reducer_core.free_pos)? {
        // every surviving coordinate is torsion, so E·F lies in the lattice
        Some(e) => {
            let mut reduced = ModEchelon::new(f_len, e);
            for v in remaining {
                reduced.insert(v)?;
            }
            reduced.generators()
        }
        None => {
            let mut reduced = EchelonBuilder::new(f_len);
            for v in remaining {
                reduced.insert(v)?;
            }
            reduced.basis().cloned().collect()
        }
    };
    let mut rel_cols: Vec<Vec<T>> = Vec::new();
    for v in &generators {
        let coords = cycles
            .coords(&densify(v, f_len))?
            .ok_or_else(|| Error::BrokenComplex("a boundary is not a cycle".into()))?;
        rel_cols.push(coords);
    }
    let presented = PresentedModule::new(c.ring(), Mat::from_cols(&rel_cols, width)?)?;
    let to_normal = presented.to_normal().clone();
    let from_normal = presented.from_normal().clone();
    let module = PresentedModule::normal(c.ring(), presented.invariant_factors(), presented.free_rank())?;

    let mut lift = SparseMat::zero(n, module.normal_rank());
    let f_index: Vec<usize> = (0..n).filter(|&i| reducer_core.free_pos[i] != NOT_FREE).collect();
    for j in 0..module.normal_rank() {
        let yv = cycles.embed(&from_normal.col(j))?;
        lift.columns[j] = yv
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(p, v)| (f_index[p], v))
            .collect();
    }

    let reducer = Reducer {
        cycles,
        to_normal,
        ..reducer_core
    };
    Ok(HomologySummary {
        degree: k,
        module,
        lift,
        reducer: Arc::new(reducer),
    })
}

/// The lcm of the relation factors when every surviving coordinate has one.
fn torsion_exponent<T: Scalar>(relations: &[(usize, T)], free_pos: &[usize]) -> Result<Option<T>> {
    let mut has = vec![false; free_pos.len()];
    let mut e = T::one();
    for (i, f) in relations {
        if f.is_zero() || free_pos[*i] == NOT_FREE {
            continue;
        }
        has[*i] = true;
        e = e.lcm(f);
        if e.to_i64().is_none_or(|v| v > 1 << 30) {
            return Ok(None);
        }
    }
    let all = (0..free_pos.len()).all(|i| free_pos[i] == NOT_FREE || has[i]);
    Ok(all.then_some(e))
}

struct Elimination<T> {
    eliminated: Vec<bool>,
    /// `(row, pivot sign, rest of the pivot column)` in elimination order.
    pivots: Vec<(usize, T, SparseVec<T>)>,
    /// Nonzero columns left over, supported on rows never eliminated.
    remaining: Vec<SparseVec<T>>,
}

/// Gaussian elimination on the column lattice using only `±1` pivots,
/// preferring short columns and rows that occur rarely. Column operations
/// preserve the lattice; each pivot removes its row from every column.
fn eliminate_units<T: Scalar>(n: usize, mut cols: Vec<SparseVec<T>>) -> Result<Elimination<T>> {
    let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, col) in cols.iter().enumerate() {
        for (i, _) in col {
            row_cols[*i].push(j);
        }
    }
    let mut eliminated = vec![false; n];
    let mut pivots = Vec::new();
    loop {
        let mut order: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
        order.sort_by_key(|&j| cols[j].len());
        let mut progress = false;
        for j in order {
            let Some((i, s)) = cols[j]
                .iter()
                .filter(|(_, v)| v.is_one() || (-v.clone()).is_one())
                .min_by_key(|(i, _)| row_cols[*i].len())
                .cloned()
            else {
                continue;
            };
            progress = true;
            let pivot = std::mem::take(&mut cols[j]);
            let mut users = std::mem::take(&mut row_cols[i]);
            users.sort_unstable();
            users.dedup();
            for l in users {
                if l == j {
                    continue;
                }
                let Ok(pos) = cols[l].binary_search_by_key(&i, |e| e.0) else {
                    continue;
                };
                let c = cols[l][pos].1.mul_c(&s)?;
                cols[l] = axpy(&cols[l], &-c, &pivot)?;
                for (r, _) in &pivot {
                    if *r != i {
                        row_cols[*r].push(l);
                    }
                }
            }
            eliminated[i] = true;
            let rest = pivot.into_iter().filter(|e| e.0 != i).collect();
            pivots.push((i, s, rest));
        }
        if !progress {
            break;
        }
    }
    let remaining = cols.into_iter().filter(|c| !c.is_empty()).collect();
    Ok(Elimination {
        eliminated,
        pivots,
        remaining,
    })
}

/// Basis of `{y ∈ Z^F : d(y) ≡ 0 modulo target relations}`.
fn cycle_lattice<T: Scalar>(
    red: &Reducer<T>,
    outgoing: &SparseMat<T>,
    target_factors: Option<Vec<T>>,
    budget: usize,
) -> Result<Cycles<T>> {
    let f_len = red.f_len;
    let f_cols: Vec<usize> = (0..red.ambient).filter(|&i| red.free_pos[i] != NOT_FREE).collect();
    if f_cols.iter().all(|&j| outgoing.columns[j].is_empty()) {
        return Ok(Cycles::All);
    }
    let factors = target_factors.unwrap_or_default();
    // rows of [d|_F | diag(relations)] touched by d|_F
    let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); outgoing.rows];
    for (p, &j) in f_cols.iter().enumerate() {
        for (i, v) in &outgoing.columns[j] {
            rows[*i].push((p, v.clone()));
        }
    }
    let touched: Vec<usize> = (0..outgoing.rows).filter(|&i| !rows[i].is_empty()).collect();
    let extra: Vec<usize> = touched.iter().copied().filter(|&i| !factors[i].is_zero()).collect();
    let width = f_len + extra.len();
    let mut system = Vec::with_capacity(touched.len());
    let mut e = 0;
    for &i in &touched {
        let mut row = std::mem::take(&mut rows[i]);
        if !factors[i].is_zero() {
            row.push((f_len + e, factors[i].clone()));
            e += 1;
        }
        system.push(row);
    }
    let k = sparse_kernel(width, system, budget)?;
    let y = k.select_rows(&(0..f_len).collect::<Vec<_>>());
    let solver = Solver::new(&y)?;
    Ok(Cycles::Basis { y, solver })
}

/// Kernel basis (as columns) of the system whose equations are the given
/// sparse rows over `width` variables. Unit pivots eliminate variables; the
/// leftover equations are solved densely.
pub(crate) fn sparse_kernel<T: Scalar>(width: usize, equations: Vec<SparseVec<T>>, budget: usize) -> Result<Mat<T>> {
    let elim = eliminate_units(width, equations)?;
    let mut pos = vec![NOT_FREE; width];
    let mut free_vars = Vec::new();
    for v in 0..width {
        if !elim.eliminated[v] {
            pos[v] = free_vars.len();
            free_vars.push(v);
        }
    }
    let w = free_vars.len();
    Mat::<T>::check_budget(w, w, budget)?;
    let mut reduced = EchelonBuilder::new(w);
    for row in elim.remaining {
        reduced.insert_span(row.into_iter().map(|(v, a)| (pos[v], a)).collect())?;
    }
    let dense: Vec<Vec<T>> = reduced.basis().map(|v| densify(v, w)).collect();
    let small = if dense.is_empty() {
        Mat::identity(w)
    } else {
        kernel(&Mat::from_rows(&dense, w)?)?
    };
    let mut out = Mat::zeros(width, small.cols());
    for c in 0..small.cols() {
        let mut x = vec![T::zero(); width];
        for (p, &v) in free_vars.iter().enumerate() {
            x[v] = small[(p, c)].clone();
        }
        // s·x_i + Σ rest = 0 with every variable in rest already known
        for (i, s, rest) in elim.pivots.iter().rev() {
            let mut acc = T::zero();
            for (r, a) in rest {
                acc = acc.fma_c(a, &x[*r])?;
            }
            x[*i] = -(acc * s.clone());
        }
        for (v, val) in x.into_iter().enumerate() {
            out[(v, c)] = val;
        }
    }
    Ok(out)
}

/// The map on `H_k` induced by a chain map: lift, apply, project.
pub fn induced_on_homology<T: Scalar>(
    f: &ChainMap<T>,
    source: &HomologySummary<T>,
    target: &HomologySummary<T>,
) -> Result<ModuleMap<T>> {
    let k = source.degree;
    if target.degree != k || k > f.top_degree() {
        return Err(Error::Dimension("induced map across different degrees".into()));
    }
    let fk = f.component(k);
    let mut cols = Vec::with_capacity(source.lift.cols());
    for col in &source.lift.columns {
        let x = densify(col, source.lift.rows);
        let y = fk.mul_vec(&x)?;
        cols.push(target.project(&y)?);
    }
    let m = Mat::from_cols(&cols, target.module.normal_rank())?;
    ModuleMap::new(source.module.clone(), target.module.clone(), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::RingSpec;
    use crate::algebra::snf::snf;
    use crate::complexes::Orientation;
    use proptest::prelude::*;

    fn sp(m: &Mat<i64>) -> SparseMat<i64> {
        SparseMat::from_dense(m)
    }

    fn free_chain(ranks: Vec<usize>, maps: Vec<Mat<i64>>) -> ChainComplex<i64> {
        ChainComplex::free(RingSpec::Integers, Orientation::Chain, ranks, maps.iter().map(sp).collect()).unwrap()
    }

    #[test]
    fn exact_complex_has_no_homology() {
        // 0 → Z --(1,1)--> Z² --(1,-1)--> Z → 0
        let d1 = Mat::from_i64_rows(&[&[1, -1]]);
        let d2 = Mat::from_i64_rows(&[&[1], &[1]]);
        let c = free_chain(vec![1, 2, 1, 0], vec![d1, d2, Mat::zeros(1, 0)]);
        for k in 0..3 {
            assert!(homology(&c, k, 1 << 20).unwrap().is_zero(), "degree {k}");
        }
    }

    #[test]
    fn top_degree_refused() {
        let c = free_chain(vec![1, 1], vec![Mat::from_i64_rows(&[&[2]])]);
        assert!(matches!(homology(&c, 1, 1000), Err(Error::TopDegree { .. })));
        let h0 = homology(&c, 0, 1000).unwrap();
        assert_eq!(h0.invariant_factors(), &[2]);
    }

    #[test]
    fn torsion_in_the_chains() {
        // Z/4 --0--> Z/4 --2--> Z/4 with H in the middle Z/2
        let c = ChainComplex::new(
            RingSpec::Integers,
            Orientation::Chain,
            vec![1, 1, 1],
            vec![vec![(0, 4)], vec![(0, 4)], vec![(0, 4)]],
            vec![sp(&Mat::from_i64_rows(&[&[2]])), SparseMat::zero(1, 1)],
        )
        .unwrap();
        let h = homology(&c, 1, 1000).unwrap();
        assert_eq!(h.invariant_factors(), &[2]);
        assert_eq!(h.project(&[2]).unwrap(), vec![1]);
        assert_eq!(h.project(&[1]), Err(Error::NotACycle));
        let h0 = homology(&c, 0, 1000).unwrap();
        assert_eq!(h0.invariant_factors(), &[2]);
    }

    #[test]
    fn localized_homology() {
        // Z --6--> Z over Z[1/2] leaves Z/3
        let d = sp(&Mat::from_i64_rows(&[&[6]]));
        let c = ChainComplex::free(RingSpec::with_inverted(2), Orientation::Chain, vec![1, 1], vec![d]).unwrap();
        assert_eq!(homology(&c, 0, 1000).unwrap().invariant_factors(), &[3]);
    }

    #[test]
    fn cochain_orientation() {
        // Z --0--> Z --2--> Z: H^0 = Z, H^1 = 0 with a top Z/2 not computed
        let c = ChainComplex::free(
            RingSpec::Integers,
            Orientation::Cochain,
            vec![1, 1, 1],
            vec![sp(&Mat::zeros(1, 1)), sp(&Mat::from_i64_rows(&[&[2]]))],
        )
        .unwrap();
        assert_eq!(homology(&c, 0, 1000).unwrap().free_rank(), 1);
        assert!(homology(&c, 1, 1000).unwrap().is_zero());
        assert!(homology(&c, 2, 1000).is_err());
    }

    #[test]
    fn induced_identity_and_zero() {
        let d1 = Mat::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let c = free_chain(vec![2, 2], vec![d1]);
        let h = homology(&c, 0, 1000).unwrap();
        let id = ChainMap::new(&c, &c, vec![sp(&Mat::identity(2)), sp(&Mat::identity(2))]).unwrap();
        assert!(induced_on_homology(&id, &h, &h).unwrap().is_identity().unwrap());
        let zero = ChainMap::new(&c, &c, vec![SparseMat::zero(2, 2), SparseMat::zero(2, 2)]).unwrap();
        assert!(induced_on_homology(&zero, &h, &h).unwrap().is_zero().unwrap());
    }

    /// Oracle for free complexes: rank of ker/im plus the nonunit invariant
    /// factors of the incoming differential.
    fn oracle(d_out: &Mat<i64>, d_in: &Mat<i64>, n: usize) -> (Vec<i64>, usize) {
        let rank = |m: &Mat<i64>| snf(m, RingSpec::Integers).unwrap().diagonal().iter().filter(|x| **x != 0).count();
        let diag = snf(d_in, RingSpec::Integers).unwrap().diagonal();
        let tors: Vec<i64> = diag.iter().copied().filter(|x| x.abs() > 1).map(i64::abs).collect();
        (tors, n - rank(d_out) - rank(d_in))
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Mat<i64>> {
        proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| Mat::from_vec(rows, cols, v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn free_homology_matches_oracle(a in matrix(2, 4), b in matrix(4, 3)) {
            // d_out = a, d_in = K·b where K spans ker a
            let k = kernel(&a).unwrap();
            let b = b.select_rows(&(0..k.cols()).collect::<Vec<_>>());
            let d_in = k.mul(&b).unwrap();
            let c = free_chain(vec![2, 4, 3, 0], vec![a.clone(), d_in.clone(), Mat::zeros(3, 0)]);
            let h = homology(&c, 1, 1 << 20).unwrap();
            let (tors, free) = oracle(&a, &d_in, 4);
            prop_assert_eq!(h.invariant_factors().to_vec(), tors);
            prop_assert_eq!(h.free_rank(), free);
            // project ∘ lift = id
            for j in 0..h.lift().cols() {
                let x = densify(&h.lift().columns[j], 4);
                let mut e = vec![0; h.module().normal_rank()];
                e[j] = 1;
                prop_assert_eq!(h.project(&x).unwrap(), e);
            }
        }

        #[test]
        fn induced_is_functorial(a in matrix(2, 3), s in -2i64..=2, t in -2i64..=2) {
            let c = free_chain(vec![2, 3], vec![a.clone()]);
            let h = homology(&c, 0, 1 << 20).unwrap();
            let scale = |x: i64| ChainMap::new(&c, &c, vec![
                sp(&Mat::scalar(2, x)),
                sp(&Mat::scalar(3, x)),
            ]).unwrap();
            let fs = induced_on_homology(&scale(s), &h, &h).unwrap();
            let ft = induced_on_homology(&scale(t), &h, &h).unwrap();
            let fst = induced_on_homology(&scale(s * t), &h, &h).unwrap();
            prop_assert!(ft.after(&fs).unwrap().equals(&fst).unwrap());
        }
    }
}
