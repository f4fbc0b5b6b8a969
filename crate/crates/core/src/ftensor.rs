//! Fermionic tensors: group-valued bosonic legs plus named Grassmann
//! modes, with Berezin-saturated contraction.
//!
//! Every tensor entry is an even Grassmann element; evenness makes tensors
//! commute under multiplication, so contraction order never matters. Bonds
//! between tensors pair a θ generator with the θ̄ generator of the same
//! bond id, which is why builders name virtual modes by the lattice edge
//! they live on: glued tensors agree on the pairing automatically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::grassmann::{BerezinSign, BondId, GeneratorId, GrassmannElement, Parity};
use crate::groups::FiniteGroup;
use crate::model::Model;
use crate::scalar::Scalar;

/// Bond-id namespaces. Physical site modes come first in the generator
/// order; the Fock correspondence in the plaquette check relies on that.
pub const SITE_BASE: u32 = 0;
pub const EDGE_IN_BASE: u32 = 1_000;
pub const EDGE_OUT_BASE: u32 = 2_000;
pub const VERT_BASE: u32 = 3_000;
pub const SCRATCH_BASE: u32 = 100_000;

pub fn site_bond(site: usize) -> BondId {
    BondId(SITE_BASE + site as u32)
}
pub fn edge_bond(edge: usize) -> BondId {
    BondId(EDGE_IN_BASE + edge as u32)
}
pub fn edge_out_bond(edge: usize) -> BondId {
    BondId(EDGE_OUT_BASE + edge as u32)
}
pub fn vert_bond(vertex: usize) -> BondId {
    BondId(VERT_BASE + vertex as u32)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LegRole {
    Physical,
    /// Output side of the tensor seen as a map (its ket).
    Ket,
    /// Input side (its bra); contractions join a bra to a ket.
    Bra,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub name: String,
    pub role: LegRole,
}

impl Leg {
    pub fn new(name: impl Into<String>, role: LegRole) -> Self {
        Leg {
            name: name.into(),
            role,
        }
    }
}

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("leg mismatch: {0}")]
    LegMismatch(String),
    #[error("parity violation: entry at {0:?} is not even")]
    ParityViolation(Vec<usize>),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("entry uses undeclared generator {0:?}")]
    UndeclaredGenerator(GeneratorId),
}

/// A tensor with bosonic legs indexed by group elements and Grassmann-
/// valued entries over a declared set of fermionic modes.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionicTensor<S: Scalar> {
    legs: Vec<Leg>,
    dim: usize,
    modes: Vec<GeneratorId>,
    entries: BTreeMap<Vec<usize>, GrassmannElement<S>>,
}

impl<S: Scalar> FermionicTensor<S> {
    pub fn new(legs: Vec<Leg>, dim: usize, modes: Vec<GeneratorId>) -> Self {
        FermionicTensor {
            legs,
            dim,
            modes,
            entries: BTreeMap::new(),
        }
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modes(&self) -> &[GeneratorId] {
        &self.modes
    }

    pub fn leg_index(&self, name: &str) -> Option<usize> {
        self.legs.iter().position(|l| l.name == name)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &GrassmannElement<S>)> {
        self.entries.iter()
    }

    pub fn entry(&self, key: &[usize]) -> Option<&GrassmannElement<S>> {
        self.entries.get(key)
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    /// Insert (accumulate) an entry; enforces the declared-mode and
    /// even-parity invariants.
    pub fn accumulate(
        &mut self,
        key: Vec<usize>,
        elem: GrassmannElement<S>,
    ) -> Result<(), TensorError> {
        if elem.is_zero() {
            return Ok(());
        }
        debug_assert_eq!(key.len(), self.legs.len());
        for g in elem.support() {
            if !self.modes.contains(&g) {
                return Err(TensorError::UndeclaredGenerator(g));
            }
        }
        let slot = self
            .entries
            .remove(&key)
            .unwrap_or_else(GrassmannElement::zero);
        let sum = slot.add(&elem);
        match sum.parity() {
            Parity::Even | Parity::Zero => {}
            _ => return Err(TensorError::ParityViolation(key)),
        }
        if !sum.is_zero() {
            self.entries.insert(key, sum);
        }
        Ok(())
    }

    pub fn scale(&self, c: &S) -> Self {
        let entries = self
            .entries
            .iter()
            .filter_map(|(k, v)| {
                let sv = v.scale(c);
                (!sv.is_zero()).then(|| (k.clone(), sv))
            })
            .collect();
        FermionicTensor {
            legs: self.legs.clone(),
            dim: self.dim,
            modes: self.modes.clone(),
            entries,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_signature(other)?;
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.accumulate(k.clone(), v.clone())?;
        }
        Ok(out)
    }

    fn check_signature(&self, other: &Self) -> Result<(), TensorError> {
        if self.legs != other.legs || self.dim != other.dim {
            return Err(TensorError::SignatureMismatch(format!(
                "legs {:?} vs {:?}",
                self.legs.iter().map(|l| &l.name).collect::<Vec<_>>(),
                other.legs.iter().map(|l| &l.name).collect::<Vec<_>>()
            )));
        }
        let a: BTreeSet<_> = self.modes.iter().collect();
        let b: BTreeSet<_> = other.modes.iter().collect();
        if a != b {
            return Err(TensorError::SignatureMismatch(format!(
                "modes {:?} vs {:?}",
                self.modes, other.modes
            )));
        }
        Ok(())
    }

    /// Exact (or tolerance-based) equality after signature check.
    pub fn equal(&self, other: &Self, tol: f64) -> Result<bool, TensorError> {
        self.check_signature(other)?;
        let keys: BTreeSet<&Vec<usize>> =
            self.entries.keys().chain(other.entries.keys()).collect();
        for k in keys {
            let zero = GrassmannElement::zero();
            let a = self.entries.get(k).unwrap_or(&zero);
            let b = other.entries.get(k).unwrap_or(&zero);
            if !a.approx_eq(b, tol) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Rename mode bonds, re-canonicalizing entries.
    pub fn relabel_modes(&self, map: &BTreeMap<BondId, BondId>) -> Self {
        let modes = self
            .modes
            .iter()
            .map(|g| GeneratorId {
                bond: *map.get(&g.bond).unwrap_or(&g.bond),
                conj: g.conj,
            })
            .collect();
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| (k.clone(), v.relabel(map)))
            .collect();
        FermionicTensor {
            legs: self.legs.clone(),
            dim: self.dim,
            modes,
            entries,
        }
    }

    /// Offset all mode bond ids into a scratch namespace (used to keep the
    /// two operands of a contraction disjoint).
    pub fn offset_modes(&self, delta: u32) -> Self {
        let map: BTreeMap<BondId, BondId> = self
            .modes
            .iter()
            .map(|g| (g.bond, BondId(g.bond.0 + delta)))
            .collect();
        self.relabel_modes(&map)
    }

    pub fn rename_legs(&self, rename: &BTreeMap<String, (String, LegRole)>) -> Self {
        let legs = self
            .legs
            .iter()
            .map(|l| match rename.get(&l.name) {
                Some((n, r)) => Leg::new(n.clone(), *r),
                None => l.clone(),
            })
            .collect();
        FermionicTensor {
            legs,
            dim: self.dim,
            modes: self.modes.clone(),
            entries: self.entries.clone(),
        }
    }

    /// Dump format used by golden tests: entries keyed by comma-joined
    /// indices, each a list of [generator list, [re, im]] pairs.
    pub fn dump_json(&self) -> Value {
        let gen_str = |g: &GeneratorId| {
            if g.conj {
                format!("tb:{}", g.bond.0)
            } else {
                format!("t:{}", g.bond.0)
            }
        };
        let mut entries = serde_json::Map::new();
        for (k, v) in &self.entries {
            let key = k
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let terms: Vec<Value> = v
                .terms()
                .map(|(gens, c)| {
                    json!([
                        gens.iter().map(gen_str).collect::<Vec<_>>(),
                        format!("{}", c)
                    ])
                })
                .collect();
            entries.insert(key, Value::Array(terms));
        }
        json!({
            "legs": self.legs.iter().map(|l| json!({
                "name": l.name,
                "role": format!("{:?}", l.role),
            })).collect::<Vec<_>>(),
            "dim": self.dim,
            "modes": self.modes.iter().map(|g| gen_str(g)).collect::<Vec<_>>(),
            "entries": entries,
        })
    }
}

impl<S: Scalar> fmt::Display for FermionicTensor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "tensor [{}] over {} modes:",
            self.legs
                .iter()
                .map(|l| l.name.as_str())
                .collect::<Vec<_>>()
                .join(", "),
            self.modes.len()
        )?;
        for (k, v) in &self.entries {
            writeln!(f, "  {:?} -> {}", k, v)?;
        }
        Ok(())
    }
}

/// Wiring of a pairwise contraction: bosonic leg pairs (by index into each
/// tensor's leg list) and fermionic bonds to saturate. Each fermionic bond
/// must appear as θ on one side and θ̄ on the other.
#[derive(Clone, Debug, Default)]
pub struct BondMap {
    pub boson: Vec<(usize, usize)>,
    pub fermi: Vec<BondId>,
}

/// Contract two tensors over the given bonds.
///
/// Result legs are a's unbonded legs followed by b's unbonded legs. The
/// fermionic kernel is Berezin integration with a unit source, so bonds
/// whose generators are absent from an entry pass through with weight 1.
pub fn contract<S: Scalar>(
    a: &FermionicTensor<S>,
    b: &FermionicTensor<S>,
    bonds: &BondMap,
    sign: BerezinSign,
) -> Result<FermionicTensor<S>, TensorError> {
    if a.dim != b.dim {
        return Err(TensorError::LegMismatch("index sets differ".into()));
    }
    for &(ia, ib) in &bonds.boson {
        if ia >= a.legs.len() || ib >= b.legs.len() {
            return Err(TensorError::LegMismatch(format!(
                "bond ({ia}, {ib}) out of range"
            )));
        }
    }
    // Each fermionic bond needs opposite conjugation flags across the two
    // operands (or within the product support).
    for &bond in &bonds.fermi {
        let in_a_th = a.modes.contains(&GeneratorId::theta(bond));
        let in_a_tb = a.modes.contains(&GeneratorId::theta_bar(bond));
        let in_b_th = b.modes.contains(&GeneratorId::theta(bond));
        let in_b_tb = b.modes.contains(&GeneratorId::theta_bar(bond));
        let ok = (in_a_th || in_b_th) && (in_a_tb || in_b_tb);
        if !ok {
            return Err(TensorError::LegMismatch(format!(
                "fermionic bond {:?} lacks a θ/θ̄ pair",
                bond
            )));
        }
    }

    let a_bonded: Vec<usize> = bonds.boson.iter().map(|&(ia, _)| ia).collect();
    let b_bonded: Vec<usize> = bonds.boson.iter().map(|&(_, ib)| ib).collect();
    let a_free: Vec<usize> = (0..a.legs.len()).filter(|i| !a_bonded.contains(i)).collect();
    let b_free: Vec<usize> = (0..b.legs.len()).filter(|i| !b_bonded.contains(i)).collect();

    let mut legs: Vec<Leg> = a_free.iter().map(|&i| a.legs[i].clone()).collect();
    legs.extend(b_free.iter().map(|&i| b.legs[i].clone()));

    let fermi_set: BTreeSet<BondId> = bonds.fermi.iter().copied().collect();
    let mut modes: Vec<GeneratorId> = a
        .modes
        .iter()
        .chain(b.modes.iter())
        .copied()
        .filter(|g| !fermi_set.contains(&g.bond))
        .collect();
    modes.sort();
    modes.dedup();

    // Index b's entries by bonded values.
    let mut b_index: BTreeMap<Vec<usize>, Vec<(&Vec<usize>, &GrassmannElement<S>)>> =
        BTreeMap::new();
    for (kb, vb) in &b.entries {
        let key: Vec<usize> = b_bonded.iter().map(|&i| kb[i]).collect();
        b_index.entry(key).or_default().push((kb, vb));
    }

    let mut out = FermionicTensor::new(legs, a.dim, modes);
    for (ka, va) in &a.entries {
        let probe: Vec<usize> = a_bonded.iter().map(|&i| ka[i]).collect();
        let Some(matches) = b_index.get(&probe) else {
            continue;
        };
        for (kb, vb) in matches {
            let mut elem = va.mul(vb);
            for &bond in &fermi_set {
                if elem.is_zero() {
                    break;
                }
                elem = elem.berezin_contract_sourced(bond, sign);
            }
            if elem.is_zero() {
                continue;
            }
            let mut key: Vec<usize> = a_free.iter().map(|&i| ka[i]).collect();
            key.extend(b_free.iter().map(|&i| kb[i]));
            out.accumulate(key, elem)?;
        }
    }
    Ok(out)
}

/// Identity operator on one group-valued leg pair (no fermionic content).
pub fn identity_tensor<S: Scalar>(dim: usize) -> FermionicTensor<S> {
    let mut t = FermionicTensor::new(
        vec![Leg::new("k", LegRole::Ket), Leg::new("b", LegRole::Bra)],
        dim,
        vec![],
    );
    for v in 0..dim {
        t.accumulate(vec![v, v], GrassmannElement::one()).unwrap();
    }
    t
}

/// Triangle orientation tag.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    Plus,
    Minus,
}

/// Bond ids used by one triangle tensor: the physical site mode and the
/// three edge modes (edges 01, 12 and 02 in branching order).
#[derive(Clone, Copy, Debug)]
pub struct TriangleWiring {
    pub site: BondId,
    pub e01: BondId,
    pub e12: BondId,
    pub e02: BondId,
}

impl TriangleWiring {
    pub fn standalone() -> Self {
        TriangleWiring {
            site: site_bond(0),
            e01: edge_bond(0),
            e12: edge_bond(1),
            e02: edge_bond(2),
        }
    }
}

fn push_if<S: Scalar>(gens: &mut Vec<GeneratorId>, exponent: u8, gen: GeneratorId) {
    if exponent & 1 == 1 {
        gens.push(gen);
    }
}

/// Entry of the triangle tensor A± at virtual labels (v0, v1, v2): the
/// super-3-cocycle weight and the four Grassmann factors in fixed order.
pub fn a_entry<S: Scalar>(
    model: &Model<S>,
    orientation: Orientation,
    v: [usize; 3],
    w: &TriangleWiring,
) -> GrassmannElement<S> {
    let g = &model.group;
    let s = &model.s;
    let [v0, v1, v2] = v;
    let p01 = g.mul(g.inv(v0), v1);
    let p12 = g.mul(g.inv(v1), v2);
    let p02 = g.mul(g.inv(v0), v2);
    let mut gens: Vec<GeneratorId> = Vec::with_capacity(4);
    let coeff;
    match orientation {
        Orientation::Plus => {
            coeff = model.omega.eval(v0, p01, p12);
            push_if::<S>(&mut gens, s.eval(p01, p12), GeneratorId::theta(w.site));
            push_if::<S>(&mut gens, s.eval(v0, p02), GeneratorId::theta(w.e02));
            push_if::<S>(&mut gens, s.eval(v1, p12), GeneratorId::theta_bar(w.e12));
            push_if::<S>(&mut gens, s.eval(v0, p01), GeneratorId::theta_bar(w.e01));
        }
        Orientation::Minus => {
            coeff = model.omega.eval_inv(v0, p01, p12);
            push_if::<S>(&mut gens, s.eval(v0, p01), GeneratorId::theta(w.e01));
            push_if::<S>(&mut gens, s.eval(v1, p12), GeneratorId::theta(w.e12));
            push_if::<S>(&mut gens, s.eval(v0, p02), GeneratorId::theta_bar(w.e02));
            push_if::<S>(&mut gens, s.eval(p01, p12), GeneratorId::theta_bar(w.site));
        }
    }
    GrassmannElement::monomial(&gens, coeff)
}

/// Entry of the pseudo-inverse triangle Ã± at virtual labels (v0, v1, v2),
/// including the extra (−1)^{s(v0, v0⁻¹v2)} weight.
pub fn a_tilde_entry<S: Scalar>(
    model: &Model<S>,
    orientation: Orientation,
    v: [usize; 3],
    w: &TriangleWiring,
) -> GrassmannElement<S> {
    let g = &model.group;
    let s = &model.s;
    let [v0, v1, v2] = v;
    let p01 = g.mul(g.inv(v0), v1);
    let p12 = g.mul(g.inv(v1), v2);
    let p02 = g.mul(g.inv(v0), v2);
    let mut gens: Vec<GeneratorId> = Vec::with_capacity(4);
    let mut coeff;
    match orientation {
        Orientation::Plus => {
            coeff = model.omega.eval_inv(v0, p01, p12);
            push_if::<S>(&mut gens, s.eval(v0, p01), GeneratorId::theta(w.e01));
            push_if::<S>(&mut gens, s.eval(v1, p12), GeneratorId::theta(w.e12));
            push_if::<S>(&mut gens, s.eval(v0, p02), GeneratorId::theta_bar(w.e02));
            push_if::<S>(&mut gens, s.eval(p01, p12), GeneratorId::theta_bar(w.site));
        }
        Orientation::Minus => {
            coeff = model.omega.eval(v0, p01, p12);
            push_if::<S>(&mut gens, s.eval(p01, p12), GeneratorId::theta(w.site));
            push_if::<S>(&mut gens, s.eval(v0, p02), GeneratorId::theta(w.e02));
            push_if::<S>(&mut gens, s.eval(v1, p12), GeneratorId::theta_bar(w.e12));
            push_if::<S>(&mut gens, s.eval(v0, p01), GeneratorId::theta_bar(w.e01));
        }
    }
    if s.eval(v0, p02) & 1 == 1 {
        coeff = -coeff;
    }
    GrassmannElement::monomial(&gens, coeff)
}

/// Build the triangle tensor A± with physical legs (spins on edges 01, 12,
/// 02) and virtual bra legs (corner labels v0, v1, v2).
pub fn build_a<S: Scalar>(
    model: &Model<S>,
    orientation: Orientation,
    w: &TriangleWiring,
) -> FermionicTensor<S> {
    let n = model.order();
    let legs = vec![
        Leg::new("p01", LegRole::Physical),
        Leg::new("p12", LegRole::Physical),
        Leg::new("p02", LegRole::Physical),
        Leg::new("v0", LegRole::Bra),
        Leg::new("v1", LegRole::Bra),
        Leg::new("v2", LegRole::Bra),
    ];
    let modes = triangle_modes(orientation, w);
    let mut t = FermionicTensor::new(legs, n, modes);
    let g = &model.group;
    for v0 in 0..n {
        for v1 in 0..n {
            for v2 in 0..n {
                let elem = a_entry(model, orientation, [v0, v1, v2], w);
                if elem.is_zero() {
                    continue;
                }
                let key = vec![
                    g.mul(g.inv(v0), v1),
                    g.mul(g.inv(v1), v2),
                    g.mul(g.inv(v0), v2),
                    v0,
                    v1,
                    v2,
                ];
                t.accumulate(key, elem).expect("A entries are even");
            }
        }
    }
    t
}

/// Build Ã± with virtual ket legs and physical legs named by the edge
/// whose spin they carry (paired with A's physical legs site-by-site).
pub fn build_a_tilde<S: Scalar>(
    model: &Model<S>,
    orientation: Orientation,
    w: &TriangleWiring,
) -> FermionicTensor<S> {
    let n = model.order();
    let legs = vec![
        Leg::new("v0", LegRole::Ket),
        Leg::new("v1", LegRole::Ket),
        Leg::new("v2", LegRole::Ket),
        Leg::new("p12", LegRole::Physical),
        Leg::new("p01", LegRole::Physical),
        Leg::new("p02", LegRole::Physical),
    ];
    let modes = triangle_modes(
        match orientation {
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
        },
        w,
    );
    let mut t = FermionicTensor::new(legs, n, modes);
    let g = &model.group;
    for v0 in 0..n {
        for v1 in 0..n {
            for v2 in 0..n {
                let elem = a_tilde_entry(model, orientation, [v0, v1, v2], w);
                if elem.is_zero() {
                    continue;
                }
                let key = vec![
                    v0,
                    v1,
                    v2,
                    g.mul(g.inv(v1), v2),
                    g.mul(g.inv(v0), v1),
                    g.mul(g.inv(v0), v2),
                ];
                t.accumulate(key, elem).expect("Ã entries are even");
            }
        }
    }
    t
}

/// Mode declarations of A± (Ã± uses the opposite orientation's set).
fn triangle_modes(orientation: Orientation, w: &TriangleWiring) -> Vec<GeneratorId> {
    match orientation {
        Orientation::Plus => vec![
            GeneratorId::theta(w.site),
            GeneratorId::theta(w.e02),
            GeneratorId::theta_bar(w.e12),
            GeneratorId::theta_bar(w.e01),
        ],
        Orientation::Minus => vec![
            GeneratorId::theta(w.e01),
            GeneratorId::theta(w.e12),
            GeneratorId::theta_bar(w.e02),
            GeneratorId::theta_bar(w.site),
        ],
    }
}

/// MPO edge-tensor tag: T₊ sits on boundary edges parallel to the ring
/// walk, T₋ on anti-parallel edges.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MpoTag {
    Plus,
    Minus,
}

/// Bond ids for one MPO edge tensor.
#[derive(Clone, Copy, Debug)]
pub struct TWiring {
    /// Radial mode paired with the region tensor (same id as its edge).
    pub edge_in: BondId,
    /// Radial mode surviving to the output side.
    pub edge_out: BondId,
    /// Transversal mode at the walk-tail vertex.
    pub vert_tail: BondId,
    /// Transversal mode at the walk-head vertex.
    pub vert_head: BondId,
}

/// Entry of the MPO edge tensor T±(g) for walk labels (v0, v1) =
/// (tail, head). Returns the Grassmann factor; ket labels are (v0, v1) and
/// bra labels (g·v0, g·v1).
pub fn t_entry<S: Scalar>(
    model: &Model<S>,
    tag: MpoTag,
    g_elt: usize,
    v0: usize,
    v1: usize,
    w: &TWiring,
) -> GrassmannElement<S> {
    let g = &model.group;
    let s = &model.s;
    let mut gens: Vec<GeneratorId> = Vec::with_capacity(4);
    let coeff;
    match tag {
        MpoTag::Plus => {
            // Edge points v0 → v1 (parallel to the walk).
            let e = g.mul(g.inv(v0), v1);
            coeff = model.omega.eval(g_elt, v0, e);
            push_if::<S>(&mut gens, s.eval(v0, e), GeneratorId::theta(w.edge_in));
            push_if::<S>(&mut gens, s.eval(g_elt, v1), GeneratorId::theta(w.vert_head));
            push_if::<S>(
                &mut gens,
                s.eval(g.mul(g_elt, v0), e),
                GeneratorId::theta_bar(w.edge_out),
            );
            push_if::<S>(&mut gens, s.eval(g_elt, v0), GeneratorId::theta_bar(w.vert_tail));
        }
        MpoTag::Minus => {
            // Edge points v1 → v0 (anti-parallel to the walk).
            let e = g.mul(g.inv(v1), v0);
            coeff = model.omega.eval_inv(g_elt, v1, e);
            push_if::<S>(&mut gens, s.eval(g_elt, v1), GeneratorId::theta(w.vert_head));
            push_if::<S>(
                &mut gens,
                s.eval(g.mul(g_elt, v1), e),
                GeneratorId::theta(w.edge_out),
            );
            push_if::<S>(&mut gens, s.eval(g_elt, v0), GeneratorId::theta_bar(w.vert_tail));
            push_if::<S>(&mut gens, s.eval(v1, e), GeneratorId::theta_bar(w.edge_in));
        }
    }
    GrassmannElement::monomial(&gens, coeff)
}

/// Build T±(g) as a standalone four-leg tensor.
pub fn build_t<S: Scalar>(
    model: &Model<S>,
    tag: MpoTag,
    g_elt: usize,
    w: &TWiring,
) -> FermionicTensor<S> {
    let n = model.order();
    let legs = vec![
        Leg::new("k0", LegRole::Ket),
        Leg::new("k1", LegRole::Ket),
        Leg::new("b0", LegRole::Bra),
        Leg::new("b1", LegRole::Bra),
    ];
    let modes = match tag {
        MpoTag::Plus => vec![
            GeneratorId::theta(w.edge_in),
            GeneratorId::theta(w.vert_head),
            GeneratorId::theta_bar(w.edge_out),
            GeneratorId::theta_bar(w.vert_tail),
        ],
        MpoTag::Minus => vec![
            GeneratorId::theta(w.vert_head),
            GeneratorId::theta(w.edge_out),
            GeneratorId::theta_bar(w.vert_tail),
            GeneratorId::theta_bar(w.edge_in),
        ],
    };
    let mut t = FermionicTensor::new(legs, n, modes);
    let g = &model.group;
    for v0 in 0..n {
        for v1 in 0..n {
            let elem = t_entry(model, tag, g_elt, v0, v1, w);
            if elem.is_zero() {
                continue;
            }
            let key = vec![v0, v1, g.mul(g_elt, v0), g.mul(g_elt, v1)];
            t.accumulate(key, elem).expect("T entries are even");
        }
    }
    t
}

/// Weight of the sign tensor Y on the diagonal pair (v, w):
/// (−1)^{s(w·v⁻¹, v)}.
pub fn y_weight(group: &FiniteGroup, s: &crate::groups::Cocycle2, v: usize, w: usize) -> i8 {
    if s.eval(group.mul(w, group.inv(v)), v) & 1 == 1 {
        -1
    } else {
        1
    }
}

/// The purely bosonic sign tensor Y as a diagonal map on a pair of legs.
pub fn build_y<S: Scalar>(model: &Model<S>) -> FermionicTensor<S> {
    let n = model.order();
    let legs = vec![
        Leg::new("kv", LegRole::Ket),
        Leg::new("kw", LegRole::Ket),
        Leg::new("bv", LegRole::Bra),
        Leg::new("bw", LegRole::Bra),
    ];
    let mut t = FermionicTensor::new(legs, n, vec![]);
    for v in 0..n {
        for w in 0..n {
            let c = if y_weight(&model.group, &model.s, v, w) < 0 {
                -S::one()
            } else {
                S::one()
            };
            t.accumulate(vec![v, w, v, w], GrassmannElement::scalar(c))
                .unwrap();
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::BerezinSign;
    use crate::model::{ftc_model, z2_bosonic_tc, FtcSign};
    use crate::scalar::Exact;

    type T = FermionicTensor<Exact>;

    fn ftc() -> Model<Exact> {
        ftc_model(FtcSign::Plus)
    }

    #[test]
    fn a_plus_ftc_entries() {
        let m = ftc();
        let w = TriangleWiring::standalone();
        let a = build_a(&m, Orientation::Plus, &w);
        // (0,0,0): coefficient 1, no Grassmann factors.
        let e = a.entry(&[0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(e, &GrassmannElement::one());
        // (0,1,0): spins (1,1,0); weight ω(0,1,1) = 1; physical θ present
        // (s(1,1) = 1) and θ̄ on edge 12 (s(1,1) = 1); edges 01, 02 empty.
        let e = a.entry(&[1, 1, 0, 0, 1, 0]).unwrap();
        let expect = GrassmannElement::monomial(
            &[GeneratorId::theta(w.site), GeneratorId::theta_bar(w.e12)],
            Exact::one(),
        );
        assert_eq!(e, &expect);
        // (1,0,1): weight ω(1,1,1) = i; physical θ and θ̄ on edge 01.
        let e = a.entry(&[1, 1, 0, 1, 0, 1]).unwrap();
        let expect = GrassmannElement::monomial(
            &[GeneratorId::theta(w.site), GeneratorId::theta_bar(w.e01)],
            Exact::i(),
        );
        assert_eq!(e, &expect);
        // (0,1,1): weight ω(0,1,0) = 1, scalar entry.
        let e = a.entry(&[1, 0, 1, 0, 1, 1]).unwrap();
        assert_eq!(e, &GrassmannElement::one());
    }

    #[test]
    fn t_plus_ftc_entry() {
        let m = ftc();
        let w = TWiring {
            edge_in: edge_bond(0),
            edge_out: edge_out_bond(0),
            vert_tail: vert_bond(0),
            vert_head: vert_bond(1),
        };
        // T₊(1) at (v0,v1) = (0,1): weight ω(1,0,1) = 1; exponents
        // s(0,1)=0, s(1,1)=1, s(1·0=1, 1)=1, s(1,0)=0: transversal head θ
        // and radial-out θ̄ survive.
        let e = t_entry(&m, MpoTag::Plus, 1, 0, 1, &w);
        let expect = GrassmannElement::monomial(
            &[
                GeneratorId::theta(w.vert_head),
                GeneratorId::theta_bar(w.edge_out),
            ],
            Exact::one(),
        );
        assert_eq!(e, expect);
        // T₋(1) at (v0,v1) = (1,1): weight ω⁻¹(1,1,0) = 1.
        let e = t_entry(&m, MpoTag::Minus, 1, 1, 1, &w);
        assert!(!e.is_zero());
        let coeffs: Vec<&Exact> = e.terms().map(|(_, c)| c).collect();
        assert_eq!(coeffs, vec![&Exact::one()]);
        // T₊(0) is trivial-weighted with no transversal content.
        let e = t_entry(&m, MpoTag::Plus, 0, 0, 1, &w);
        assert_eq!(e, GrassmannElement::one());
    }

    #[test]
    fn y_diagonal_ftc() {
        let m = ftc();
        let y = build_y(&m);
        // Diagonal (+1, +1, +1, −1) over (v,w) ∈ {0,1}²; −1 exactly at
        // (v,w) = (1,0) where s(w·v⁻¹, v) = s(1,1) = 1.
        let get = |v: usize, w: usize| y.entry(&[v, w, v, w]).unwrap().clone();
        assert_eq!(get(0, 0), GrassmannElement::one());
        assert_eq!(get(0, 1), GrassmannElement::one());
        assert_eq!(get(1, 1), GrassmannElement::one());
        assert_eq!(get(1, 0), GrassmannElement::one().neg());
        // Y² = identity: diagonal entries square to 1.
        for v in 0..2 {
            for w in 0..2 {
                let e = get(v, w);
                assert_eq!(e.mul(&e), GrassmannElement::one());
            }
        }
        // s ≡ 0 gives the identity.
        let b = z2_bosonic_tc::<Exact>();
        let yb = build_y(&b);
        for v in 0..2 {
            for w in 0..2 {
                assert_eq!(yb.entry(&[v, w, v, w]).unwrap(), &GrassmannElement::one());
            }
        }
    }

    #[test]
    fn bosonic_limit_has_no_fermions() {
        let m = z2_bosonic_tc::<Exact>();
        let w = TriangleWiring::standalone();
        for orientation in [Orientation::Plus, Orientation::Minus] {
            let a = build_a(&m, orientation, &w);
            for (_, e) in a.entries() {
                assert!(e.support().is_empty());
            }
            let at = build_a_tilde(&m, orientation, &w);
            for (_, e) in at.entries() {
                assert!(e.support().is_empty());
            }
        }
    }

    #[test]
    fn contract_with_identity() {
        let m = ftc();
        let w = TriangleWiring::standalone();
        let a = build_a(&m, Orientation::Plus, &w);
        let id = identity_tensor::<Exact>(2);
        // Contract A's v2 bra leg with the identity's ket leg.
        let bonds = BondMap {
            boson: vec![(5, 0)],
            fermi: vec![],
        };
        let c = contract(&a, &id, &bonds, BerezinSign::Minus).unwrap();
        // Same data, with the leg moved to the end.
        for (k, v) in a.entries() {
            let mut key: Vec<usize> = k[..5].to_vec();
            key.push(k[5]);
            assert_eq!(c.entry(&key), Some(v));
        }
    }

    #[test]
    fn parity_violation_rejected() {
        let mut t = T::new(
            vec![Leg::new("x", LegRole::Physical)],
            2,
            vec![GeneratorId::theta(BondId(0))],
        );
        let odd = GrassmannElement::generator(GeneratorId::theta(BondId(0)));
        assert!(matches!(
            t.accumulate(vec![0], odd),
            Err(TensorError::ParityViolation(_))
        ));
    }

    #[test]
    fn dump_json_shape() {
        let m = ftc();
        let y = build_y(&m);
        let d = y.dump_json();
        assert!(d.get("entries").is_some());
        assert_eq!(d["dim"], 2);
    }
}
