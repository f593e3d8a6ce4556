//! `SL_n` and `GL_n` over `Z/m` as explicit finite groups, together with the
//! unit-conjugation action, the `δ` section and the `γ` exact sequence.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::module::{ModuleMap, PresentedModule};
use crate::algebra::ring::RingSpec;
use crate::error::{Error, Result};
use crate::gmodules::GModule;
use crate::group_homology::{induced, Check, Variance};
use crate::groups::{GroupHom, GroupTable};
use crate::scalar::Scalar;

/// Default limit on the order of an enumerated matrix group.
pub const DEFAULT_GROUP_BOUND: usize = 512;

/// The ring `Z/m` with its unit group.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    m: u64,
    units: Vec<u64>,
    unit_index: HashMap<u64, usize>,
    unit_table: GroupTable,
}

impl FiniteRing {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Input(format!("Z/{m} is not a ring with 1 != 0")));
        }
        if m > u32::MAX as u64 {
            return Err(Error::Input(format!("modulus {m} is too large")));
        }
        let units: Vec<u64> = (1..m).filter(|a| a.gcd(&m) == 1).collect();
        let unit_index = units.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let labels = units.iter().map(|a| a.to_string()).collect();
        let unit_table = GroupTable::from_elements(units.clone(), |a, b| a * b % m, None, Some(labels))?;
        Ok(FiniteRing { m, units, unit_index, unit_table })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Units in increasing order; `1` comes first.
    pub fn units(&self) -> &[u64] {
        &self.units
    }

    /// `R*`, element `i` being `units()[i]`.
    pub fn unit_group(&self) -> &GroupTable {
        &self.unit_table
    }

    pub fn unit_index(&self, a: u64) -> Option<usize> {
        self.unit_index.get(&(a % self.m)).copied()
    }

    pub fn is_unit(&self, a: u64) -> bool {
        self.unit_index(a).is_some()
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.m
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let (mut acc, mut base) = (1 % self.m, a % self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        let i = self.unit_index(a).ok_or_else(|| Error::Input(format!("{a} is not a unit mod {}", self.m)))?;
        Ok(self.units[self.unit_table.inv(i)])
    }

    /// `R*ⁿ`, sorted.
    pub fn nth_powers(&self, n: u64) -> Vec<u64> {
        let set: HashSet<u64> = self.units.iter().map(|&a| self.pow(a, n)).collect();
        let mut v: Vec<u64> = set.into_iter().collect();
        v.sort_unstable();
        v
    }
}

/// `μ_n(R) = {a ∈ R* : aⁿ = 1}`, sorted.
pub fn mu(n: u64, ring: &FiniteRing) -> Vec<u64> {
    ring.units().iter().copied().filter(|&a| ring.pow(a, n) == 1).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixKind {
    #[serde(alias = "sl")]
    SL,
    #[serde(alias = "gl")]
    GL,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixKind::SL => write!(f, "SL"),
            MatrixKind::GL => write!(f, "GL"),
        }
    }
}

/// Row-major `n × n` matrix with entries in `0..m`.
pub type Matrix = Vec<u64>;

/// An explicit `SL_n(Z/m)` or `GL_n(Z/m)`. Element `0` is the identity; the
/// rest follow in lexicographic order of their entries.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    n: usize,
    ring: FiniteRing,
    kind: MatrixKind,
    elements: Vec<Matrix>,
    table: GroupTable,
    index: HashMap<Matrix, usize>,
}

fn mat_mul(n: usize, m: u64, a: &[u64], b: &[u64]) -> Matrix {
    let mut c = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] = (c[i * n + j] + x * b[k * n + j]) % m;
            }
        }
    }
    c
}

/// Determinant mod `m` by cofactor expansion along the first row.
fn mat_det(n: usize, m: u64, a: &[u64]) -> u64 {
    match n {
        0 => 1 % m,
        1 => a[0] % m,
        2 => (a[0] * a[3] % m + m - a[1] * a[2] % m) % m,
        _ => {
            let mut acc = 0u64;
            for j in 0..n {
                let x = a[j];
                if x == 0 {
                    continue;
                }
                let minor: Vec<u64> = (1..n)
                    .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| a[r * n + c]))
                    .collect();
                let term = x * mat_det(n - 1, m, &minor) % m;
                acc = if j % 2 == 0 { (acc + term) % m } else { (acc + m - term) % m };
            }
            acc
        }
    }
}

fn identity_matrix(n: usize) -> Matrix {
    diagonal(&vec![1; n])
}

fn diagonal(d: &[u64]) -> Matrix {
    let n = d.len();
    let mut a = vec![0u64; n * n];
    for (i, &x) in d.iter().enumerate() {
        a[i * n + i] = x;
    }
    a
}

fn label(n: usize, a: &[u64]) -> String {
    let rows: Vec<String> = a
        .chunks(n)
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

/// Enumerates `SL_n(Z/m)` or `GL_n(Z/m)`, giving up as soon as more than
/// `bound` elements have been found.
pub fn build_group(n: usize, m: u64, kind: MatrixKind, bound: usize) -> Result<MatrixGroup> {
    if n == 0 {
        return Err(Error::Input("matrix size must be positive".into()));
    }
    let ring = FiniteRing::new(m)?;
    let cells = n * n;
    let mut elements: Vec<Matrix> = Vec::new();
    let mut a = vec![0u64; cells];
    loop {
        let d = mat_det(n, m, &a);
        let keep = match kind {
            MatrixKind::SL => d == 1 % m,
            MatrixKind::GL => ring.is_unit(d),
        };
        if keep {
            if elements.len() == bound {
                return Err(Error::Budget { cells: bound + 1, budget: bound });
            }
            elements.push(a.clone());
        }
        // odometer, last entry fastest
        let mut pos = cells;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            a[pos] += 1;
            if a[pos] < m {
                break;
            }
            a[pos] = 0;
        }
        if a.iter().all(|&x| x == 0) {
            break;
        }
    }
    let id = identity_matrix(n);
    let at = elements.iter().position(|e| *e == id).expect("identity is enumerated");
    let id = elements.remove(at);
    elements.insert(0, id);
    let labels = elements.iter().map(|e| label(n, e)).collect();
    let table = GroupTable::from_elements(elements.clone(), |x, y| mat_mul(n, m, x, y), None, Some(labels))?;
    let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    Ok(MatrixGroup { n, ring, kind, elements, table, index })
}

impl MatrixGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn element(&self, i: usize) -> &[u64] {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn index_of(&self, a: &[u64]) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn det(&self, i: usize) -> u64 {
        mat_det(self.n, self.ring.modulus(), &self.elements[i])
    }

    fn lookup(&self, a: &[u64], what: &str) -> Result<usize> {
        self.index_of(a)
            .ok_or_else(|| Error::IllDefinedMap(format!("{what} leaves {}{}(Z/{})", self.kind, self.n, self.ring.modulus())))
    }
}

/// `A ↦ diag(a, I) · A · diag(a⁻¹, I)`.
pub fn unit_conjugation(a: u64, g: &MatrixGroup) -> Result<GroupHom> {
    let ring = &g.ring;
    let inv = ring.inv(a)?;
    let n = g.n;
    let mut d = vec![1u64; n];
    let mut di = vec![1u64; n];
    d[0] = a % ring.modulus();
    di[0] = inv;
    let (d, di) = (diagonal(&d), diagonal(&di));
    let m = ring.modulus();
    let image = g
        .elements
        .iter()
        .map(|x| g.lookup(&mat_mul(n, m, &mat_mul(n, m, &d, x), &di), "unit conjugation"))
        .collect::<Result<Vec<_>>>()?;
    GroupHom::new(g.table.clone(), g.table.clone(), image)
}

/// Diagonal entries of `diag(aⁿ⁻¹, a⁻¹, …, a⁻¹)`, which has determinant 1.
fn power_witness(n: usize, ring: &FiniteRing, a: u64) -> Result<Vec<u64>> {
    let inv = ring.inv(a)?;
    let mut d = vec![inv; n];
    d[0] = ring.pow(a, n as u64 - 1);
    Ok(d)
}

/// Conjugating by a diagonal matrix `diag(d)` scales entry `(i, j)` by
/// `d_i d_j⁻¹`. Checks, for every unit `a`, that `diag(aⁿ, I)` and
/// `diag(aⁿ⁻¹, a⁻¹I)` give the same scale factors, so the two conjugations
/// agree on every matrix, and that the second lies in `SL_n`.
pub fn verify_power_identity(n: usize, ring: &FiniteRing) -> Result<Check> {
    if n == 0 {
        return Err(Error::Input("matrix size must be positive".into()));
    }
    let mut bad = Vec::new();
    for &a in ring.units() {
        let mut d = vec![1u64; n];
        d[0] = ring.pow(a, n as u64);
        let e = power_witness(n, ring, a)?;
        let det = e.iter().fold(1 % ring.modulus(), |acc, &x| ring.mul(acc, x));
        let mut ok = det == 1 % ring.modulus();
        for i in 0..n {
            for j in 0..n {
                let lhs = ring.mul(d[i], ring.inv(d[j])?);
                let rhs = ring.mul(e[i], ring.inv(e[j])?);
                ok &= lhs == rhs;
            }
        }
        if !ok {
            bad.push(a);
        }
    }
    Ok(Check::new(
        "power_identity",
        bad.is_empty(),
        format!("n = {n}, Z/{}: {} units checked, failures {:?}", ring.modulus(), ring.units().len(), bad),
    ))
}

/// Checks that `aⁿ` acts on `SL_n(Z/m)` by an inner automorphism and
/// trivially on `H_q(SL_n(Z/m), Z)`.
pub fn verify_unit_power_trivial<T: Scalar>(a: u64, g: &MatrixGroup, q: usize, budget: usize) -> Result<Vec<Check>> {
    if g.kind != MatrixKind::SL {
        return Err(Error::Precondition("the unit-power action is defined on SL_n".into()));
    }
    let ring = &g.ring;
    if !ring.is_unit(a) {
        return Err(Error::Precondition(format!("{a} is not a unit mod {}", ring.modulus())));
    }
    let n = g.n;
    let mut checks = vec![verify_power_identity(n, ring)?];

    let an = ring.pow(a, n as u64);
    let phi = unit_conjugation(an, g)?;
    let witness = diagonal(&power_witness(n, ring, a)?);
    checks.push(match g.index_of(&witness) {
        Some(w) => Check::new(
            "inner_on_group",
            GroupHom::conjugation(&g.table, w).images() == phi.images(),
            format!("a^{n} = {an} acts as conjugation by {}", label(n, &witness)),
        ),
        None => Check::new("inner_on_group", false, "witness is not in the group"),
    });

    let z = PresentedModule::<T>::free(RingSpec::Integers, 1);
    let module = GModule::trivial(&g.table, &z)?;
    let f = ModuleMap::identity(&z);
    let map = induced(&phi, &f, &module, &module, q, Variance::Homology, budget)?;
    let factors: Vec<String> = map.domain().invariant_factors().iter().map(|x| x.to_string()).collect();
    checks.push(Check::new(
        "induced_identity",
        map.is_identity()?,
        format!(
            "H_{q} has invariant factors [{}] and free rank {}",
            factors.join(", "),
            map.domain().free_rank()
        ),
    ));
    Ok(checks)
}

/// `B ↦ diag(det(B)⁻¹, B)` from `GL_n` into `SL_{n+1}`.
pub fn delta_section(gl: &MatrixGroup, sl: &MatrixGroup) -> Result<GroupHom> {
    if gl.kind != MatrixKind::GL || sl.kind != MatrixKind::SL || sl.n != gl.n + 1 {
        return Err(Error::Input("delta needs GL_n and SL_(n+1)".into()));
    }
    if gl.ring.modulus() != sl.ring.modulus() {
        return Err(Error::Input("delta needs a common ring".into()));
    }
    let image = (0..gl.order())
        .map(|i| {
            let inv = gl.ring.inv(gl.det(i))?;
            sl.lookup(&block(inv, gl.n, gl.element(i)), "delta")
        })
        .collect::<Result<Vec<_>>>()?;
    GroupHom::new(gl.table.clone(), sl.table.clone(), image)
}

/// `diag(c, B)`
fn block(c: u64, n: usize, b: &[u64]) -> Matrix {
    let k = n + 1;
    let mut a = vec![0u64; k * k];
    a[0] = c;
    for i in 0..n {
        for j in 0..n {
            a[(i + 1) * k + j + 1] = b[i * n + j];
        }
    }
    a
}

/// The inclusion of one matrix group in another of the same size.
pub fn matrix_inclusion(small: &MatrixGroup, big: &MatrixGroup) -> Result<GroupHom> {
    if small.n != big.n || small.ring.modulus() != big.ring.modulus() {
        return Err(Error::Input("inclusion needs matching size and ring".into()));
    }
    let image = small
        .elements
        .iter()
        .map(|x| big.lookup(x, "inclusion"))
        .collect::<Result<Vec<_>>>()?;
    GroupHom::new(small.table.clone(), big.table.clone(), image)
}

/// `A ↦ diag(1, A)` from `SL_n` into `SL_{n+1}`.
pub fn stabilization(small: &MatrixGroup, big: &MatrixGroup) -> Result<GroupHom> {
    if big.n != small.n + 1 || small.ring.modulus() != big.ring.modulus() {
        return Err(Error::Input("stabilization needs sizes n and n + 1 over one ring".into()));
    }
    let image = small
        .elements
        .iter()
        .map(|x| big.lookup(&block(1, small.n, x), "stabilization"))
        .collect::<Result<Vec<_>>>()?;
    GroupHom::new(small.table.clone(), big.table.clone(), image)
}

/// Checks `δ : GL_n(Z/m) → SL_{n+1}(Z/m)`: a well-defined injective
/// homomorphism whose restriction to `SL_n` is the stabilization map, so that
/// `δ_* ∘ inc_* = stab_*` on `H_1(−, Z)`.
pub fn verify_delta_split<T: Scalar>(n: usize, m: u64, bound: usize, budget: usize) -> Result<Vec<Check>> {
    let gl = build_group(n, m, MatrixKind::GL, bound)?;
    let sl = build_group(n, m, MatrixKind::SL, bound)?;
    let sl1 = build_group(n + 1, m, MatrixKind::SL, bound)?;
    let delta = delta_section(&gl, &sl1)?;
    let mut checks = vec![
        Check::new("homomorphism", true, format!("checked on all {} x {} pairs", gl.order(), gl.order())),
        Check::new("injective", delta.is_injective(), format!("kernel has {} element(s)", delta.kernel().len())),
    ];
    let inc = matrix_inclusion(&sl, &gl)?;
    let stab = stabilization(&sl, &sl1)?;
    let composite = delta.after(&inc)?;
    checks.push(Check::new(
        "restriction_is_stabilization",
        composite.images() == stab.images(),
        "delta on SL_n compared elementwise with A -> diag(1, A)",
    ));

    let z = PresentedModule::<T>::free(RingSpec::Integers, 1);
    let f = ModuleMap::identity(&z);
    let on = |g: &MatrixGroup| GModule::trivial(&g.table, &z);
    let (m_sl, m_gl, m_sl1) = (on(&sl)?, on(&gl)?, on(&sl1)?);
    let inc_h = induced(&inc, &f, &m_sl, &m_gl, 1, Variance::Homology, budget)?;
    let delta_h = induced(&delta, &f, &m_gl, &m_sl1, 1, Variance::Homology, budget)?;
    let stab_h = induced(&stab, &f, &m_sl, &m_sl1, 1, Variance::Homology, budget)?;
    checks.push(Check::new(
        "h1_factorization",
        delta_h.after(&inc_h)?.equals(&stab_h)?,
        format!(
            "H_1(SL_{n}) = {}, H_1(GL_{n}) = {}, H_1(SL_{}) = {}",
            inc_h.domain(),
            inc_h.codomain(),
            n + 1,
            stab_h.codomain()
        ),
    ));
    Ok(checks)
}

/// Cardinalities in `1 → μ_n → R* × SL_n → GL_n → R*/R*ⁿ → 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaCounts {
    pub mu: usize,
    pub kernel: usize,
    pub image: usize,
    pub cokernel: usize,
}

/// Checks exactness of the four-term sequence attached to
/// `γ : R* × SL_n(R) → GL_n(R)`, `(b, B) ↦ bB`, with `R = Z/m`.
pub fn verify_gamma_exact(n: usize, m: u64, bound: usize) -> Result<(GammaCounts, Vec<Check>)> {
    let gl = build_group(n, m, MatrixKind::GL, bound)?;
    let sl = build_group(n, m, MatrixKind::SL, bound)?;
    let ring = &gl.ring;
    let mu_n = mu(n as u64, ring);
    let powers: HashSet<u64> = ring.nth_powers(n as u64).into_iter().collect();

    let scalar = |b: u64, x: &[u64]| -> Matrix { x.iter().map(|&e| ring.mul(b, e)).collect() };
    let mut kernel: HashSet<(u64, usize)> = HashSet::new();
    let mut image: HashSet<usize> = HashSet::new();
    for &b in ring.units() {
        for (i, x) in sl.elements.iter().enumerate() {
            let y = gl.lookup(&scalar(b, x), "gamma")?;
            if y == 0 {
                kernel.insert((b, i));
            }
            image.insert(y);
        }
    }
    let anti: HashSet<(u64, usize)> = mu_n
        .iter()
        .map(|&b| {
            let inv = ring.inv(b)?;
            let i = sl.lookup(&scalar(inv, &identity_matrix(n)), "mu")?;
            Ok((b, i))
        })
        .collect::<Result<_>>()?;
    let det_in_powers: HashSet<usize> = (0..gl.order()).filter(|&i| powers.contains(&gl.det(i))).collect();
    let det_classes: HashSet<Vec<u64>> = (0..gl.order())
        .map(|i| {
            let d = gl.det(i);
            let mut class: Vec<u64> = powers.iter().map(|&p| ring.mul(d, p)).collect();
            class.sort_unstable();
            class
        })
        .collect();
    let coker = ring.units().len() / powers.len();
    let counts = GammaCounts { mu: mu_n.len(), kernel: kernel.len(), image: image.len(), cokernel: gl.order() / image.len() };
    let checks = vec![
        Check::new("mu_injective", anti.len() == mu_n.len(), format!("|mu_{n}| = {}", mu_n.len())),
        Check::new("exact_at_product", kernel == anti, format!("|ker gamma| = {}", kernel.len())),
        Check::new(
            "exact_at_gl",
            image == det_in_powers,
            format!("|im gamma| = {}, |det^-1(R*^{n})| = {}", image.len(), det_in_powers.len()),
        ),
        Check::new(
            "exact_at_quotient",
            det_classes.len() == coker && counts.cokernel == coker,
            format!("|R*/R*^{n}| = {coker}, |GL/im| = {}", counts.cokernel),
        ),
    ];
    Ok((counts, checks))
}
