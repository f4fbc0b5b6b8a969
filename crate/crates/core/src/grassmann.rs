//! Exact algebra of Grassmann numbers.
//!
//! Generators θ and θ̄ anticommute and square to zero. An element is a
//! finite sum of canonically ordered monomials with scalar coefficients;
//! the canonical order is lexicographic on `(bond, conj)` with θ < θ̄ on
//! the same bond. All reordering signs are absorbed into coefficients, so
//! two elements are equal iff their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Identifier of a fermionic bond or physical site.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BondId(pub u32);

/// A single Grassmann generator: θ (`conj = false`) or θ̄ (`conj = true`)
/// living on one bond. `(bond, conj)` pairs are unique within a
/// computation; the derived `Ord` is the global generator order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GeneratorId {
    pub bond: BondId,
    pub conj: bool,
}

impl GeneratorId {
    pub fn theta(bond: BondId) -> Self {
        GeneratorId { bond, conj: false }
    }
    pub fn theta_bar(bond: BondId) -> Self {
        GeneratorId { bond, conj: true }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conj {
            write!(f, "θ̄[{}]", self.bond.0)
        } else {
            write!(f, "θ[{}]", self.bond.0)
        }
    }
}

/// Overall Z₂ grading of an element.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
    Zero,
}

/// Sign convention for Berezin integration of a bond pair.
///
/// `Plus`: ∫dθ̄dθ (θθ̄) = +1 (θ-measure innermost). `Minus`: the same
/// integral evaluates to −1 (θ̄-measure innermost). The two differ by one
/// sign per saturated bond. Identities of the tensor constructions fix the
/// working convention; see [`crate::conventions`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BerezinSign {
    Plus,
    Minus,
}

/// Sort a raw generator sequence into canonical order.
///
/// Returns `None` when a generator repeats (θ² = 0); otherwise the sorted
/// sequence together with the permutation sign (−1)^inversions.
pub fn canonicalize(raw: &[GeneratorId]) -> Option<(Vec<GeneratorId>, i8)> {
    let mut gens = raw.to_vec();
    // Insertion sort with transposition counting; sequences are short.
    let mut swaps: u64 = 0;
    for i in 1..gens.len() {
        let mut j = i;
        while j > 0 && gens[j - 1] > gens[j] {
            gens.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    for w in gens.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((gens, if swaps % 2 == 0 { 1 } else { -1 }))
}

/// A finite sum of Grassmann monomials. Immutable value semantics; no
/// zero-coefficient terms are stored.
#[derive(Clone, PartialEq, Debug)]
pub struct GrassmannElement<S: Scalar> {
    terms: BTreeMap<Vec<GeneratorId>, S>,
}

impl<S: Scalar> GrassmannElement<S> {
    pub fn zero() -> Self {
        GrassmannElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        GrassmannElement { terms }
    }

    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    pub fn generator(g: GeneratorId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![g], S::one());
        GrassmannElement { terms }
    }

    /// Build from an arbitrarily ordered generator sequence.
    pub fn monomial(raw: &[GeneratorId], coeff: S) -> Self {
        match canonicalize(raw) {
            None => Self::zero(),
            Some((gens, sign)) => {
                let c = if sign < 0 { -coeff } else { coeff };
                let mut terms = BTreeMap::new();
                if !c.is_zero() {
                    terms.insert(gens, c);
                }
                GrassmannElement { terms }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[GeneratorId], &S)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, key: &[GeneratorId]) -> Option<&S> {
        self.terms.get(key)
    }

    fn insert_term(&mut self, gens: Vec<GeneratorId>, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&gens) {
            None => {
                self.terms.insert(gens, c);
            }
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(gens, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.insert_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), -v.clone()))
            .collect();
        GrassmannElement { terms }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), v.clone() * c.clone()))
            .collect();
        GrassmannElement { terms }
    }

    /// Distributive product with sign-tracked monomial concatenation.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let mut raw = Vec::with_capacity(ka.len() + kb.len());
                raw.extend_from_slice(ka);
                raw.extend_from_slice(kb);
                if let Some((gens, sign)) = canonicalize(&raw) {
                    let mut c = va.clone() * vb.clone();
                    if sign < 0 {
                        c = -c;
                    }
                    out.insert_term(gens, c);
                }
            }
        }
        out
    }

    pub fn parity(&self) -> Parity {
        if self.terms.is_empty() {
            return Parity::Zero;
        }
        let mut even = false;
        let mut odd = false;
        for k in self.terms.keys() {
            if k.len() % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (true, false) => Parity::Even,
            (false, true) => Parity::Odd,
            _ => Parity::Mixed,
        }
    }

    /// Berezin integration ∫dθ̄dθ over one bond (pure measure).
    ///
    /// Terms that do not contain exactly the pair {θ_bond, θ̄_bond} vanish.
    /// Surviving terms pick up the reordering sign for extracting the pair,
    /// with the pair's own orientation fixed by `sign`.
    pub fn berezin_contract(&self, bond: BondId, sign: BerezinSign) -> Self {
        let mut out = Self::zero();
        let th = GeneratorId::theta(bond);
        let tb = GeneratorId::theta_bar(bond);
        for (k, v) in &self.terms {
            let (Ok(i), Ok(j)) = (k.binary_search(&th), k.binary_search(&tb)) else {
                continue;
            };
            // Canonical order puts θ before θ̄ on the same bond: i < j.
            // Extract θ first (i generators precede it), then θ̄ (now at
            // position j−1). The Minus convention flips one sign.
            let mut s = (i + j - 1) % 2 == 0;
            if sign == BerezinSign::Minus {
                s = !s;
            }
            let mut gens = k.clone();
            gens.remove(j);
            gens.remove(i);
            let c = if s { v.clone() } else { -v.clone() };
            out.insert_term(gens, c);
        }
        out
    }

    /// Bond contraction kernel used by tensor contraction: like
    /// [`berezin_contract`](Self::berezin_contract), but terms free of both
    /// bond generators pass through with weight one (the bond carries a
    /// unit source term, so an unoccupied bond contracts to 1 rather
    /// than 0). Terms containing exactly one of the pair still vanish.
    pub fn berezin_contract_sourced(&self, bond: BondId, sign: BerezinSign) -> Self {
        let mut out = self.berezin_contract(bond, sign);
        let th = GeneratorId::theta(bond);
        let tb = GeneratorId::theta_bar(bond);
        for (k, v) in &self.terms {
            if k.binary_search(&th).is_err() && k.binary_search(&tb).is_err() {
                out.insert_term(k.clone(), v.clone());
            }
        }
        out
    }

    /// Rename bonds via `map` (identity outside the map). Monomials are
    /// re-canonicalized, so rank-order changes contribute their signs.
    pub fn relabel(&self, map: &BTreeMap<BondId, BondId>) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            let raw: Vec<GeneratorId> = k
                .iter()
                .map(|g| GeneratorId {
                    bond: *map.get(&g.bond).unwrap_or(&g.bond),
                    conj: g.conj,
                })
                .collect();
            match canonicalize(&raw) {
                None => panic!("relabel produced a repeated generator"),
                Some((gens, sign)) => {
                    let c = if sign < 0 { -v.clone() } else { v.clone() };
                    out.insert_term(gens, c);
                }
            }
        }
        out
    }

    /// All bonds whose generators occur somewhere in this element.
    pub fn support(&self) -> Vec<GeneratorId> {
        let mut gens: Vec<GeneratorId> = self
            .terms
            .keys()
            .flat_map(|k| k.iter().copied())
            .collect();
        gens.sort();
        gens.dedup();
        gens
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms.iter().zip(other.terms.iter()).all(|((ka, va), (kb, vb))| {
            ka == kb && va.approx_eq(vb, tol)
        })
    }
}

impl<S: Scalar> fmt::Display for GrassmannElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", v)?;
            for g in k {
                write!(f, "·{}", g)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    type E = GrassmannElement<Exact>;

    fn th(b: u32) -> GeneratorId {
        GeneratorId::theta(BondId(b))
    }
    fn tb(b: u32) -> GeneratorId {
        GeneratorId::theta_bar(BondId(b))
    }

    #[test]
    fn canonicalize_one_transposition() {
        // [θ₂, θ₁] → −θ₁θ₂
        let e = E::monomial(&[th(2), th(1)], Exact::one());
        assert_eq!(
            e.coefficient(&[th(1), th(2)]),
            Some(&Exact::from_ints(-1, 0))
        );
    }

    #[test]
    fn canonicalize_repeat_is_zero() {
        assert!(E::monomial(&[th(1), th(1)], Exact::one()).is_zero());
    }

    #[test]
    fn canonicalize_three_cycle() {
        // [θ₃, θ₁, θ₂] has an even permutation: +θ₁θ₂θ₃. Oracle: bubble
        // sort of (3,1,2) needs two transpositions.
        let e = E::monomial(&[th(3), th(1), th(2)], Exact::one());
        assert_eq!(
            e.coefficient(&[th(1), th(2), th(3)]),
            Some(&Exact::one())
        );
    }

    #[test]
    fn multiply_anticommutes() {
        let a = E::generator(th(1));
        let b = E::generator(th(2));
        assert_eq!(a.mul(&b), b.mul(&a).neg());
    }

    #[test]
    fn multiply_expansion() {
        // (θ₁ + θ₂)(θ₁ − θ₂) = −2 θ₁θ₂
        let a = E::generator(th(1)).add(&E::generator(th(2)));
        let b = E::generator(th(1)).sub(&E::generator(th(2)));
        let expect = E::monomial(&[th(1), th(2)], Exact::from_ints(-2, 0));
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn berezin_convention_pair() {
        // ∫dθ̄dθ (θθ̄) = +1 under the Plus convention, −1 under Minus.
        let pair = E::monomial(&[th(1), tb(1)], Exact::one());
        assert_eq!(
            pair.berezin_contract(BondId(1), BerezinSign::Plus),
            E::one()
        );
        assert_eq!(
            pair.berezin_contract(BondId(1), BerezinSign::Minus),
            E::one().neg()
        );
        // No saturating pair: zero either way.
        assert!(E::one().berezin_contract(BondId(1), BerezinSign::Plus).is_zero());
    }

    #[test]
    fn berezin_spectator_reordering() {
        // ∫dθ̄₁dθ₁ (θ₂θ₁θ̄₁): the spectator θ₂ commutes past the even pair,
        // so the result is ±θ₂ with the sign of the bare-pair integral.
        // Exhaustive 3-generator reordering oracle: θ₂θ₁θ̄₁ = θ₁θ̄₁θ₂ (two
        // transpositions), and ∫dθ̄₁dθ₁ θ₁θ̄₁ = +1 (Plus).
        let m = E::monomial(&[th(2), th(1), tb(1)], Exact::one());
        assert_eq!(
            m.berezin_contract(BondId(1), BerezinSign::Plus),
            E::generator(th(2))
        );
        assert_eq!(
            m.berezin_contract(BondId(1), BerezinSign::Minus),
            E::generator(th(2)).neg()
        );
    }

    #[test]
    fn berezin_linearity() {
        let a = E::monomial(&[th(1), tb(1)], Exact::from_ints(3, 0));
        let b = E::monomial(&[th(2), th(1), tb(1)], Exact::from_ints(0, 2));
        let lhs = a.add(&b).berezin_contract(BondId(1), BerezinSign::Plus);
        let rhs = a
            .berezin_contract(BondId(1), BerezinSign::Plus)
            .add(&b.berezin_contract(BondId(1), BerezinSign::Plus));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sourced_kernel_passes_empty_bonds() {
        let free = E::generator(th(2));
        assert_eq!(
            free.berezin_contract_sourced(BondId(1), BerezinSign::Plus),
            free
        );
        // A term with only half the pair dies.
        let half = E::generator(th(1));
        assert!(half
            .berezin_contract_sourced(BondId(1), BerezinSign::Plus)
            .is_zero());
    }

    #[test]
    fn parity_classification() {
        assert_eq!(
            E::monomial(&[th(1), th(2)], Exact::one()).parity(),
            Parity::Even
        );
        assert_eq!(E::generator(th(1)).parity(), Parity::Odd);
        let mixed = E::generator(th(1)).add(&E::monomial(&[th(1), th(2)], Exact::one()));
        assert_eq!(mixed.parity(), Parity::Mixed);
        assert_eq!(E::zero().parity(), Parity::Zero);
    }

    #[test]
    fn relabel_tracks_order_change() {
        // θ[1]θ[2] with 1 ↦ 5, 2 ↦ 3 keeps order; 1 ↦ 5, 2 ↦ 4 with a swap
        // map reverses rank and flips sign.
        let e = E::monomial(&[th(1), th(2)], Exact::one());
        let mut map = BTreeMap::new();
        map.insert(BondId(1), BondId(5));
        map.insert(BondId(2), BondId(3));
        let r = e.relabel(&map);
        assert_eq!(
            r.coefficient(&[th(3), th(5)]),
            Some(&Exact::from_ints(-1, 0))
        );
    }
}
