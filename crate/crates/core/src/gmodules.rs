//! Modules over the group ring `R[G]` of a finite group.
//!
//! A [`GModule`] always lives in normal coordinates (ambient = normal
//! coordinates of its module), with one action matrix per group element.
//! Torsion rows of the action matrices are reduced modulo their invariant
//! factor, so `A(g)A(h) = A(gh)` holds modulo the relations only.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::functors::{block_diag_of, power, scalar_blocks};
use crate::algebra::mat::Mat;
use crate::algebra::module::{ModuleMap, PresentedModule};
use crate::algebra::ring::RingSpec;
use crate::error::{Error, Result};
use crate::groups::{abelian_basis, GroupHom, GroupTable, Subgroup};
use crate::scalar::Scalar;

#[derive(Clone)]
pub struct GModule<T> {
    group: GroupTable,
    module: PresentedModule<T>,
    action: Arc<Vec<Mat<T>>>,
}

impl<T: Scalar> std::fmt::Debug for GModule<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GModule({} over a group of order {})", self.module, self.group.order())
    }
}

/// A module re-expressed in normal coordinates, with the coordinate changes.
#[derive(Clone)]
pub struct Transported<T> {
    pub gmodule: GModule<T>,
    /// Old ambient coordinates to normal coordinates.
    pub to: Mat<T>,
    /// Normal coordinates to old ambient coordinates.
    pub from: Mat<T>,
}

fn reduce_rows<T: Scalar>(mut m: Mat<T>, factors: &[T]) -> Mat<T> {
    for (i, f) in factors.iter().enumerate() {
        m.reduce_row_mod(i, f);
    }
    m
}

impl<T: Scalar> GModule<T> {
    /// `module` with each generator of `group` acting by the given matrix
    /// (ambient coordinates of `module`). The action is expanded to every
    /// element and validated.
    pub fn new(group: &GroupTable, module: &PresentedModule<T>, generator_actions: &[Mat<T>]) -> Result<Self> {
        Ok(Self::transport(group, module, generator_actions)?.gmodule)
    }

    /// As [`GModule::new`], also returning the coordinate changes.
    pub fn transport(
        group: &GroupTable,
        module: &PresentedModule<T>,
        generator_actions: &[Mat<T>],
    ) -> Result<Transported<T>> {
        let gens = group.generators();
        if generator_actions.len() != gens.len() {
            return Err(Error::InvalidAction(format!(
                "{} generator matrices given, the group has {} generators",
                generator_actions.len(),
                gens.len()
            )));
        }
        for a in generator_actions {
            // well-defined on the presented module
            ModuleMap::new(module.clone(), module.clone(), a.clone())
                .map_err(|e| Error::InvalidAction(format!("generator action: {e}")))?;
        }
        let (normal, to, from) = module.normalized()?;
        let factors = normal.invariant_factors().to_vec();
        let gen_normal: Vec<Mat<T>> = generator_actions
            .iter()
            .map(|a| Ok(reduce_rows(to.matrix().mul(a)?.mul(from.matrix())?, &factors)))
            .collect::<Result<_>>()?;
        let n = normal.ambient_rank();
        let tree = group.spanning_tree();
        let mut action: Vec<Option<Mat<T>>> = vec![None; group.order()];
        action[0] = Some(Mat::identity(n));
        for y in group.bfs_order().into_iter().skip(1) {
            let (x, k) = tree[y].expect("spanning tree");
            let ax = action[x].as_ref().expect("parent first");
            action[y] = Some(reduce_rows(gen_normal[k].mul(ax)?, &factors));
        }
        let action: Vec<Mat<T>> = action.into_iter().map(|a| a.expect("all reached")).collect();
        let m = GModule {
            group: group.clone(),
            module: normal,
            action: Arc::new(action),
        };
        m.check_relations()?;
        Ok(Transported {
            gmodule: m,
            to: to.matrix().clone(),
            from: from.matrix().clone(),
        })
    }

    /// From a matrix for every element, already in normal coordinates of a
    /// normal-form module. Validated like [`GModule::new`].
    pub fn from_element_actions(group: &GroupTable, module: &PresentedModule<T>, actions: Vec<Mat<T>>) -> Result<Self> {
        if !module.is_normal_form() {
            return Err(Error::InvalidAction("module must be in normal form".into()));
        }
        if actions.len() != group.order() {
            return Err(Error::InvalidAction("one matrix per element required".into()));
        }
        let factors = module.invariant_factors().to_vec();
        let actions = actions.into_iter().map(|a| reduce_rows(a, &factors)).collect();
        let m = GModule {
            group: group.clone(),
            module: module.clone(),
            action: Arc::new(actions),
        };
        for g in 0..group.order() {
            ModuleMap::new(m.module.clone(), m.module.clone(), m.action[g].clone())
                .map_err(|e| Error::InvalidAction(format!("element {g}: {e}")))?;
        }
        if !m.module.is_zero_element_matrix(&m.action[0].sub(&Mat::identity(module.ambient_rank()))?)? {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        m.check_relations()?;
        Ok(m)
    }

    /// The trivial action.
    pub fn trivial(group: &GroupTable, module: &PresentedModule<T>) -> Result<Self> {
        let id = Mat::identity(module.ambient_rank());
        Self::new(group, module, &vec![id; group.generators().len()])
    }

    /// `A(s)A(x) = A(sx)` for every generator `s` and element `x`; together
    /// with `A(1) = 1` this makes the action a homomorphism.
    fn check_relations(&self) -> Result<()> {
        for &s in self.group.generators() {
            for x in 0..self.group.order() {
                let lhs = self.action[s].mul(&self.action[x])?;
                let diff = lhs.sub(&self.action[self.group.mul(s, x)])?;
                if !self.module.is_zero_element_matrix(&diff)? {
                    return Err(Error::InvalidAction(format!(
                        "action is not multiplicative at generator {s}, element {x}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn module(&self) -> &PresentedModule<T> {
        &self.module
    }

    pub fn ring(&self) -> RingSpec {
        self.module.ring()
    }

    pub fn rank(&self) -> usize {
        self.module.ambient_rank()
    }

    pub fn action(&self, g: usize) -> &Mat<T> {
        &self.action[g]
    }

    pub fn action_map(&self, g: usize) -> ModuleMap<T> {
        ModuleMap::new(self.module.clone(), self.module.clone(), self.action[g].clone()).expect("validated action")
    }

    pub fn is_trivial_action(&self) -> Result<bool> {
        let id = Mat::identity(self.rank());
        for &s in self.group.generators() {
            if !self.module.is_zero_element_matrix(&self.action[s].sub(&id)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same module over a different ring (relations and matrices unchanged).
    pub fn with_ring(&self, ring: RingSpec) -> Result<Self> {
        let module = PresentedModule::new(ring, self.module.relations().clone())?;
        let gens: Vec<Mat<T>> = self.group.generators().iter().map(|&s| self.action[s].clone()).collect();
        Self::new(&self.group, &module, &gens)
    }

    fn generator_differences(&self) -> Result<Vec<Mat<T>>> {
        let id = Mat::identity(self.rank());
        self.group
            .generators()
            .iter()
            .map(|&s| self.action[s].sub(&id))
            .collect()
    }

    /// `M_G = M / (m - gm)` with the projection `M → M_G`. The ambient space
    /// of `M_G` is that of `M` and the projection matrix is the identity.
    pub fn coinvariants(&self) -> Result<(PresentedModule<T>, ModuleMap<T>)> {
        let mut rel = self.module.relations().clone();
        for d in self.generator_differences()? {
            rel = rel.hstack(&d)?;
        }
        let mg = PresentedModule::new(self.ring(), rel)?;
        let proj = ModuleMap::new(self.module.clone(), mg.clone(), Mat::identity(self.rank()))?;
        Ok((mg, proj))
    }

    /// `M^G = {m : gm = m}` with the inclusion into `M`.
    pub fn invariants(&self) -> Result<(PresentedModule<T>, ModuleMap<T>)> {
        let diffs = self.generator_differences()?;
        if diffs.is_empty() {
            return Ok((self.module.clone(), ModuleMap::identity(&self.module)));
        }
        let mut stack = diffs[0].clone();
        for d in &diffs[1..] {
            stack = stack.vstack(d)?;
        }
        let target = power(&self.module, diffs.len())?;
        ModuleMap::new(self.module.clone(), target, stack)?.kernel()
    }

    /// `α_G : M^G → M_G`, inclusion followed by projection.
    pub fn alpha(&self) -> Result<ModuleMap<T>> {
        let (inv, inc) = self.invariants()?;
        let (coinv, proj) = self.coinvariants()?;
        ModuleMap::new(inv, coinv, proj.matrix().mul(inc.matrix())?)
    }

    /// `N̄ : M_G → M^G` induced by `N = Σ_g g`.
    pub fn norm(&self) -> Result<ModuleMap<T>> {
        let mut n = Mat::zeros(self.rank(), self.rank());
        for a in self.action.iter() {
            n = n.add(a)?;
        }
        let (coinv, _) = self.coinvariants()?;
        let (_, inc) = self.invariants()?;
        let to_m = ModuleMap::new(coinv, self.module.clone(), n)?;
        to_m.factor_through(&inc)
    }

    /// Checks `N̄∘α = |G|` on `M^G` and `α∘N̄ = |G|` on `M_G`.
    pub fn norm_alpha_identities(&self) -> Result<(bool, bool)> {
        let alpha = self.alpha()?;
        let norm = self.norm()?;
        let order = T::from_usize_c(self.group.order());
        let na = norm.after(&alpha)?;
        let an = alpha.after(&norm)?;
        let first = na.equals(&ModuleMap::scalar(alpha.domain(), order.clone()))?;
        let second = an.equals(&ModuleMap::scalar(alpha.codomain(), order))?;
        Ok((first, second))
    }

    /// The same module with the action restricted to `b`.
    pub fn restrict(&self, b: &Subgroup) -> Result<Self> {
        if b.parent() != &self.group {
            return Err(Error::Input("subgroup of a different group".into()));
        }
        let actions = b.elements().iter().map(|&g| self.action[g].clone()).collect();
        Ok(GModule {
            group: b.table(),
            module: self.module.clone(),
            action: Arc::new(actions),
        })
    }

    /// Pull back along `φ : H → G`.
    pub fn pullback(&self, phi: &GroupHom) -> Result<Self> {
        if phi.codomain() != &self.group {
            return Err(Error::Input("homomorphism into a different group".into()));
        }
        let actions = (0..phi.domain().order())
            .map(|h| self.action[phi.apply(h)].clone())
            .collect();
        Ok(GModule {
            group: phi.domain().clone(),
            module: self.module.clone(),
            action: Arc::new(actions),
        })
    }

    /// `M_B` for a subgroup `B`, with its induced `G`-action, the projection
    /// from `M` in the new normal coordinates, and a set-theoretic section
    /// (normal coordinates of `M_B` to coordinates of `M`).
    pub fn coinvariants_under(&self, b: &Subgroup) -> Result<(GModule<T>, ModuleMap<T>, Mat<T>)> {
        let (mb, _) = self.restrict(b)?.coinvariants()?;
        let gens: Vec<Mat<T>> = self.group.generators().iter().map(|&s| self.action[s].clone()).collect();
        let t = GModule::transport(&self.group, &mb, &gens)?;
        let proj = ModuleMap::new(self.module.clone(), t.gmodule.module.clone(), t.to.clone())?;
        Ok((t.gmodule, proj, t.from))
    }

    /// `M^B` for a subgroup `B`, with its induced `G`-action and the inclusion
    /// into `M`.
    pub fn invariants_under(&self, b: &Subgroup) -> Result<(GModule<T>, ModuleMap<T>)> {
        let (mb, inc) = self.restrict(b)?.invariants()?;
        let gens: Vec<Mat<T>> = self
            .group
            .generators()
            .iter()
            .map(|&s| Ok(self.action_map(s).after(&inc)?.factor_through(&inc)?.matrix().clone()))
            .collect::<Result<_>>()?;
        let t = GModule::transport(&self.group, &mb, &gens)?;
        let inc_normal = ModuleMap::new(t.gmodule.module.clone(), self.module.clone(), inc.matrix().mul(&t.from)?)?;
        Ok((t.gmodule, inc_normal))
    }

    /// `M` viewed with the trivial action of the same group.
    pub fn as_trivial(&self) -> Result<Self> {
        Self::trivial(&self.group, &self.module)
    }

    /// Is `f : self → other` equivariant along `φ : G_self → G_other`?
    pub fn is_equivariant(&self, other: &GModule<T>, phi: &GroupHom, f: &ModuleMap<T>) -> Result<bool> {
        for &s in self.group.generators() {
            let lhs = f.matrix().mul(&self.action[s])?;
            let rhs = other.action[phi.apply(s)].mul(f.matrix())?;
            if !other.module.is_zero_element_matrix(&lhs.sub(&rhs)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn block_action(&self, g: usize, k: usize) -> Mat<T> {
        block_diag_of(&vec![self.action[g].clone(); k])
    }
}

/// How a functor of `M` sits inside `M^k`.
enum Shape {
    Kernel,
    Cokernel,
}

/// A functor value `F(N, M)` with its induced action, and the coordinate
/// changes to and from `M^k` (`k` = number of blocks).
pub struct FunctorValue<T> {
    pub gmodule: GModule<T>,
    /// For kernels: normal coordinates to `M^k` (injective).
    /// For cokernels: normal coordinates to a lift in `M^k`.
    pub to_blocks: Mat<T>,
    /// For cokernels: `M^k` to normal coordinates (the projection).
    pub from_blocks: Option<Mat<T>>,
    pub blocks: usize,
}

fn functor_scalars<T: Scalar>(n: &PresentedModule<T>, with_free: bool) -> Vec<T> {
    let mut s = n.invariant_factors().to_vec();
    if with_free {
        s.extend(std::iter::repeat(T::zero()).take(n.free_rank()));
    }
    s
}

fn functor_value<T: Scalar>(n: &PresentedModule<T>, m: &GModule<T>, shape: Shape, with_free: bool) -> Result<FunctorValue<T>> {
    if n.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    let scalars = functor_scalars(n, with_free);
    let k = scalars.len();
    let d = scalar_blocks(m.module(), &scalars)?;
    let gens = m.group().generators();
    match shape {
        Shape::Kernel => {
            let (km, inc) = d.kernel()?;
            let acts: Vec<Mat<T>> = gens
                .iter()
                .map(|&s| {
                    let act = ModuleMap::new(d.domain().clone(), d.domain().clone(), m.block_action(s, k))?;
                    Ok(act.after(&inc)?.factor_through(&inc)?.matrix().clone())
                })
                .collect::<Result<_>>()?;
            let t = GModule::transport(m.group(), &km, &acts)?;
            Ok(FunctorValue {
                to_blocks: inc.matrix().mul(&t.from)?,
                from_blocks: None,
                gmodule: t.gmodule,
                blocks: k,
            })
        }
        Shape::Cokernel => {
            let (cm, _) = d.cokernel()?;
            let acts: Vec<Mat<T>> = gens.iter().map(|&s| m.block_action(s, k)).collect();
            let t = GModule::transport(m.group(), &cm, &acts)?;
            Ok(FunctorValue {
                to_blocks: t.from.clone(),
                from_blocks: Some(t.to.clone()),
                gmodule: t.gmodule,
                blocks: k,
            })
        }
    }
}

/// `Tor_n^R(N, M)` with the `G`-action induced from `M`. `N` is a plain
/// module, so it always carries the trivial action.
pub fn tor<T: Scalar>(deg: usize, n: &PresentedModule<T>, m: &GModule<T>) -> Result<FunctorValue<T>> {
    match deg {
        0 => functor_value(n, m, Shape::Cokernel, true),
        1 => functor_value(n, m, Shape::Kernel, false),
        _ => zero_value(m),
    }
}

/// `Ext^n_R(N, M)` with the `G`-action induced from `M`.
pub fn ext<T: Scalar>(deg: usize, n: &PresentedModule<T>, m: &GModule<T>) -> Result<FunctorValue<T>> {
    match deg {
        0 => functor_value(n, m, Shape::Kernel, true),
        1 => functor_value(n, m, Shape::Cokernel, false),
        _ => zero_value(m),
    }
}

fn zero_value<T: Scalar>(m: &GModule<T>) -> Result<FunctorValue<T>> {
    let z = PresentedModule::zero(m.ring());
    Ok(FunctorValue {
        gmodule: GModule::trivial(m.group(), &z)?,
        to_blocks: Mat::zeros(0, 0),
        from_blocks: Some(Mat::zeros(0, 0)),
        blocks: 0,
    })
}

/// The natural map `Tor_n(N, M)_G → Tor_n(N, M_G)` for `n ∈ {0, 1}`.
pub fn tor_comparison<T: Scalar>(deg: usize, n: &PresentedModule<T>, m: &GModule<T>) -> Result<ModuleMap<T>> {
    let tm = tor(deg, n, m)?;
    let (src, _) = tm.gmodule.coinvariants()?;
    let (mg, _) = m.coinvariants()?;
    // the projection M → M_G is the identity on ambient coordinates
    let trivial = GModule::trivial(m.group(), &mg)?;
    let target_raw = tor(deg, n, &trivial)?;
    match deg {
        0 => {
            let target_proj = target_raw.from_blocks.as_ref().expect("cokernel");
            // trivial.transport changed coordinates of M_G: apply them blockwise
            let k = tm.blocks;
            let tmg = GModule::transport(m.group(), &mg, &vec![Mat::identity(mg.ambient_rank()); m.group().generators().len()])?;
            let blocks_to = block_diag_of(&vec![tmg.to.clone(); k]);
            let mat = target_proj.mul(&blocks_to)?.mul(&tm.to_blocks)?;
            ModuleMap::new(src, target_raw.gmodule.module().clone(), mat)
        }
        1 => {
            let k = tm.blocks;
            let tmg = GModule::transport(m.group(), &mg, &vec![Mat::identity(mg.ambient_rank()); m.group().generators().len()])?;
            let blocks_to = block_diag_of(&vec![tmg.to.clone(); k]);
            let into_blocks = blocks_to.mul(&tm.to_blocks)?;
            let target_blocks = power(tmg.gmodule.module(), k)?;
            let inc = ModuleMap::new(target_raw.gmodule.module().clone(), target_blocks.clone(), target_raw.to_blocks.clone())?;
            let f = ModuleMap::new(tm.gmodule.module().clone(), target_blocks, into_blocks)?;
            f.factor_through(&inc)?.with_domain(src)
        }
        _ => Ok(ModuleMap::zero(&src, target_raw.gmodule.module())),
    }
}

/// The natural map `Ext^n(N, M^G) → Ext^n(N, M)^G` for `n ∈ {0, 1}`.
pub fn ext_comparison<T: Scalar>(deg: usize, n: &PresentedModule<T>, m: &GModule<T>) -> Result<ModuleMap<T>> {
    let em = ext(deg, n, m)?;
    let (tgt, tgt_inc) = em.gmodule.invariants()?;
    let (mi, mi_inc) = m.invariants()?;
    let trivial = GModule::trivial(m.group(), &mi)?;
    let tmi = GModule::transport(m.group(), &mi, &vec![Mat::identity(mi.ambient_rank()); m.group().generators().len()])?;
    let src = ext(deg, n, &trivial)?;
    let k = src.blocks;
    // normal coordinates of the source → (M^G)^k normal → M^k
    let inc_blocks = block_diag_of(&vec![mi_inc.matrix().mul(&tmi.from)?; k]);
    let lifted = inc_blocks.mul(&src.to_blocks)?;
    let into_em = match deg {
        0 => {
            // kernel shape: express in the kernel coordinates of Ext^0(N, M)
            let blocks = power(m.module(), k)?;
            let inc = ModuleMap::new(em.gmodule.module().clone(), blocks.clone(), em.to_blocks.clone())?;
            let f = ModuleMap::new(src.gmodule.module().clone(), blocks, lifted)?;
            f.factor_through(&inc)?
        }
        1 => {
            let proj = em.from_blocks.as_ref().expect("cokernel");
            ModuleMap::new(src.gmodule.module().clone(), em.gmodule.module().clone(), proj.mul(&lifted)?)?
        }
        _ => return Ok(ModuleMap::zero(src.gmodule.module(), &tgt)),
    };
    into_em.factor_through(&tgt_inc)
}

/// Deterministic random `G`-modules for abelian `G`: ambient rank at most 3,
/// relation entries in `[-4, 4]` (closed under the action), and each basis
/// element of `G` acting by a matrix with entries in `[-1, 1]` whose order
/// divides the element's order; the matrices commute pairwise.
pub fn random_module<T: Scalar, Rg: Rng>(group: &GroupTable, ring: RingSpec, rng: &mut Rg) -> Result<GModule<T>> {
    let basis = abelian_basis(group)?;
    let rank = rng.gen_range(1..=3usize);
    let pool = automorphism_pool(rank);
    let mut chosen: Vec<&Mat<i64>> = Vec::new();
    for &(_, ord) in &basis {
        let candidates: Vec<&(Mat<i64>, u64)> = pool
            .iter()
            .filter(|(a, o)| ord % o == 0 && chosen.iter().all(|b| commutes(a, b)))
            .collect();
        let pick = candidates.choose(rng).expect("identity always qualifies");
        chosen.push(&pick.0);
    }
    // action of every element through its coordinates in the basis
    let n = group.order();
    let mut actions: Vec<Option<Mat<i64>>> = vec![None; n];
    let mut frontier = vec![0usize];
    actions[0] = Some(Mat::identity(rank));
    while let Some(x) = frontier.pop() {
        for (k, &(b, _)) in basis.iter().enumerate() {
            let y = group.mul(x, b);
            if actions[y].is_none() {
                actions[y] = Some(chosen[k].mul(actions[x].as_ref().expect("set"))?);
                frontier.push(y);
            }
        }
    }
    let actions: Vec<Mat<i64>> = actions.into_iter().map(|a| a.expect("basis generates")).collect();
    // relations: orbits of up to two seed vectors, kept if entries stay small
    let seeds = rng.gen_range(0..=2usize);
    let mut rel_cols: Vec<Vec<i64>> = Vec::new();
    for _ in 0..seeds {
        for _attempt in 0..8 {
            let v: Vec<i64> = (0..rank).map(|_| rng.gen_range(-4..=4)).collect();
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            let orbit: Vec<Vec<i64>> = actions
                .iter()
                .map(|a| a.mul_vec(&v))
                .collect::<Result<_>>()?;
            if orbit.iter().flatten().all(|x| x.abs() <= 4) {
                for o in orbit {
                    if !rel_cols.contains(&o) {
                        rel_cols.push(o);
                    }
                }
                break;
            }
        }
    }
    let conv = |m: &Mat<i64>| -> Mat<T> {
        let rows: Vec<Vec<T>> = m
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|&x| T::from_i64_c(x)).collect())
            .collect();
        Mat::from_rows(&rows, m.cols()).expect("shape")
    };
    let rel = Mat::<i64>::from_cols(&rel_cols, rank)?;
    let module = PresentedModule::new(ring, conv(&rel))?;
    let gens: Vec<Mat<T>> = group.generators().iter().map(|&s| conv(&actions[s])).collect();
    GModule::new(group, &module, &gens)
}

fn commutes(a: &Mat<i64>, b: &Mat<i64>) -> bool {
    a.mul(b).ok() == b.mul(a).ok()
}

/// Invertible `rank × rank` matrices with entries in `[-1, 1]` and finite
/// order, with that order.
pub fn automorphism_pool(rank: usize) -> Vec<(Mat<i64>, u64)> {
    let cells = rank * rank;
    let total = 3usize.pow(cells as u32);
    let id = Mat::<i64>::identity(rank);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let data: Vec<i64> = (0..cells)
            .map(|_| {
                let d = (c % 3) as i64 - 1;
                c /= 3;
                d
            })
            .collect();
        let a = Mat::from_vec(rank, rank, data).expect("shape");
        if a.det().map(|d| d.abs() != 1).unwrap_or(true) {
            continue;
        }
        // integer matrices of finite order in rank <= 3 have order <= 12
        let mut p = a.clone();
        for k in 1..=12u64 {
            if p == id {
                out.push((a.clone(), k));
                break;
            }
            p = match p.mul(&a) {
                Ok(p) => p,
                Err(_) => break,
            };
        }
    }
    out.sort_by_key(|(_, k)| *k);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, direct_product, subgroup_generated};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m1(x: i64) -> Mat<i64> {
        Mat::from_i64_rows(&[&[x]])
    }

    fn negation(ring: RingSpec) -> GModule<i64> {
        GModule::new(&cyclic(2).unwrap(), &PresentedModule::free(ring, 1), &[m1(-1)]).unwrap()
    }

    #[test]
    fn coinvariants_examples() {
        let (mg, _) = negation(RingSpec::Integers).coinvariants().unwrap();
        assert_eq!(mg.invariant_factors(), &[2]);
        let (mg, _) = negation(RingSpec::Inverted(2)).coinvariants().unwrap();
        assert!(mg.is_zero());
        let z = PresentedModule::<i64>::free(RingSpec::Integers, 1);
        let t = GModule::trivial(&cyclic(2).unwrap(), &z).unwrap();
        let (mg, p) = t.coinvariants().unwrap();
        assert!(mg.same_structure(&z));
        assert!(p.is_isomorphism().unwrap());
    }

    #[test]
    fn invariants_examples() {
        let (mi, _) = negation(RingSpec::Integers).invariants().unwrap();
        assert!(mi.is_zero());
        let swap = Mat::<i64>::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let z2 = PresentedModule::free(RingSpec::Integers, 2);
        let m = GModule::new(&cyclic(2).unwrap(), &z2, &[swap]).unwrap();
        let (mi, inc) = m.invariants().unwrap();
        assert_eq!(mi.free_rank(), 1);
        assert!(mi.invariant_factors().is_empty());
        let v = inc.matrix().col(0);
        assert_eq!(v[0].abs(), 1);
        assert_eq!(v[0], v[1]);
    }

    #[test]
    fn torsion_invariants_are_found() {
        // Z/4 with the generator of Z/2 acting by -1: invariants {0, 2}
        let z4 = PresentedModule::from_cyclic_orders(RingSpec::Integers, &[4]).unwrap();
        let m = GModule::new(&cyclic(2).unwrap(), &z4, &[m1(-1)]).unwrap();
        let (mi, _) = m.invariants().unwrap();
        assert_eq!(mi.invariant_factors(), &[2]);
    }

    #[test]
    fn alpha_and_norm_examples() {
        let z = PresentedModule::<i64>::free(RingSpec::Integers, 1);
        let t = GModule::trivial(&cyclic(2).unwrap(), &z).unwrap();
        assert!(t.alpha().unwrap().is_isomorphism().unwrap());
        let n = t.norm().unwrap();
        assert!(n.equals(&ModuleMap::scalar(n.domain(), 2)).unwrap());
        let neg = negation(RingSpec::Integers);
        let a = neg.alpha().unwrap();
        assert!(a.domain().is_zero());
        assert_eq!(a.codomain().invariant_factors(), &[2]);
        assert!(neg.norm().unwrap().is_zero().unwrap());
        let z3 = PresentedModule::from_cyclic_orders(RingSpec::Integers, &[3]).unwrap();
        let t3 = GModule::trivial(&cyclic(3).unwrap(), &z3).unwrap();
        assert!(t3.norm().unwrap().is_zero().unwrap());
        assert_eq!(neg.norm_alpha_identities().unwrap(), (true, true));
        assert_eq!(t3.norm_alpha_identities().unwrap(), (true, true));
    }

    #[test]
    fn restriction_examples() {
        let z4 = cyclic(4).unwrap();
        let m = GModule::new(&z4, &PresentedModule::free(RingSpec::Integers, 1), &[m1(-1)]).unwrap();
        let b = subgroup_generated(&z4, &[2]).unwrap();
        assert!(m.restrict(&b).unwrap().is_trivial_action().unwrap());
        let e = subgroup_generated(&z4, &[]).unwrap();
        assert!(m.restrict(&e).unwrap().is_trivial_action().unwrap());
        let all = subgroup_generated(&z4, &[1]).unwrap();
        assert!(!m.restrict(&all).unwrap().is_trivial_action().unwrap());
    }

    #[test]
    fn invalid_actions_rejected() {
        let z = PresentedModule::<i64>::free(RingSpec::Integers, 1);
        // 2 is not invertible, and -1 has order 2, not dividing 3
        assert!(GModule::new(&cyclic(2).unwrap(), &z, &[m1(2)]).is_err());
        assert!(GModule::new(&cyclic(3).unwrap(), &z, &[m1(-1)]).is_err());
        let z4 = PresentedModule::from_cyclic_orders(RingSpec::Integers, &[4]).unwrap();
        // multiplication by 3 on Z/4 has order 2
        assert!(GModule::new(&cyclic(2).unwrap(), &z4, &[m1(3)]).is_ok());
        assert!(GModule::new(&cyclic(3).unwrap(), &z4, &[m1(3)]).is_err());
    }

    #[test]
    fn example_values() {
        let m = negation(RingSpec::Integers);
        let z2 = PresentedModule::from_cyclic_orders(RingSpec::Integers, &[2]).unwrap();
        let t = tor(1, &z2, &m).unwrap();
        assert!(t.gmodule.coinvariants().unwrap().0.is_zero());
        let (mg, _) = m.coinvariants().unwrap();
        let triv = GModule::trivial(m.group(), &mg).unwrap();
        assert_eq!(tor(1, &z2, &triv).unwrap().gmodule.module().invariant_factors(), &[2]);
        let e = ext(1, &z2, &m).unwrap();
        assert_eq!(e.gmodule.invariants().unwrap().0.invariant_factors(), &[2]);
        let (mi, _) = m.invariants().unwrap();
        let triv = GModule::trivial(m.group(), &mi).unwrap();
        assert!(ext(1, &z2, &triv).unwrap().gmodule.module().is_zero());
        assert!(!tor_comparison(1, &z2, &m).unwrap().is_isomorphism().unwrap());
        assert!(!ext_comparison(1, &z2, &m).unwrap().is_isomorphism().unwrap());
    }

    #[test]
    fn tor_zero_is_tensor() {
        let m = negation(RingSpec::Integers);
        let n = PresentedModule::from_cyclic_orders(RingSpec::Integers, &[4, 0]).unwrap();
        let t = tor(0, &n, &m).unwrap();
        let plain = crate::algebra::functors::tensor(&n, m.module()).unwrap();
        assert!(t.gmodule.module().same_structure(&plain));
        assert!(tor(2, &n, &m).unwrap().gmodule.module().is_zero());
    }

    #[test]
    fn comparisons_iso_when_order_invertible() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = PresentedModule::from_cyclic_orders(RingSpec::Inverted(6), &[5, 25, 0]).unwrap();
        for _ in 0..5 {
            let m: GModule<i64> = random_module(&g, RingSpec::Inverted(6), &mut rng).unwrap();
            for deg in 0..=1 {
                assert!(tor_comparison(deg, &n, &m).unwrap().is_isomorphism().unwrap());
                assert!(ext_comparison(deg, &n, &m).unwrap().is_isomorphism().unwrap());
            }
        }
    }

    #[test]
    fn random_modules_are_deterministic() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(4).unwrap()).unwrap();
        let a: GModule<i64> = random_module(&g, RingSpec::Integers, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b: GModule<i64> = random_module(&g, RingSpec::Integers, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a.module(), b.module());
        for x in 0..8 {
            assert_eq!(a.action(x), b.action(x));
        }
    }

    #[test]
    fn pool_orders() {
        let pool = automorphism_pool(1);
        assert_eq!(pool.len(), 2);
        assert!(automorphism_pool(2).iter().any(|(_, k)| *k == 6));
        assert!(automorphism_pool(3).iter().all(|(_, k)| [1, 2, 3, 4, 6].contains(k)));
    }
}
