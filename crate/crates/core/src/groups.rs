//! Finite groups, Z₂-valued 2-cocycles and graded super-3-cocycles.
//!
//! Groups are explicit multiplication tables over 0..n−1 with 0 the
//! identity. Cocycle data is always normalized (any identity argument
//! gives the trivial value). The graded pentagon solver enumerates
//! normalized solutions with values among n-th roots of unity by
//! constraint propagation in exponent arithmetic, so it stays exact for
//! every root order.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not square or contains out-of-range entries")]
    MalformedTable,
    #[error("associativity fails at triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("0 is not a two-sided identity (element {0})")]
    NoIdentity(usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
}

/// A finite group given by its multiplication table; element 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validate a multiplication table and construct the group.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::MalformedTable);
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n {
                return Err(GroupError::MalformedTable);
            }
            for &x in row {
                if x >= n {
                    return Err(GroupError::MalformedTable);
                }
                flat.push(x);
            }
        }
        for g in 0..n {
            if flat[g] != g || flat[g * n] != g {
                return Err(GroupError::NoIdentity(g));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab_c = flat[flat[a * n + b] * n + c];
                    let a_bc = flat[a * n + flat[b * n + c]];
                    if ab_c != a_bc {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            for h in 0..n {
                if flat[g * n + h] == 0 && flat[h * n + g] == 0 {
                    inv[g] = h;
                    break;
                }
            }
            if inv[g] == usize::MAX {
                return Err(GroupError::NoInverse(g));
            }
        }
        Ok(FiniteGroup {
            order: n,
            table: flat,
            inv,
        })
    }

    /// Cyclic group Z_n.
    pub fn cyclic(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(&table).expect("cyclic table is a group")
    }

    /// Direct product Z_m × Z_n, elements indexed a·n + b.
    pub fn product_cyclic(m: usize, n: usize) -> Self {
        let idx = |a: usize, b: usize| a * n + b;
        let table: Vec<Vec<usize>> = (0..m * n)
            .map(|x| {
                let (xa, xb) = (x / n, x % n);
                (0..m * n)
                    .map(|y| {
                        let (ya, yb) = (y / n, y % n);
                        idx((xa + ya) % m, (xb + yb) % n)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&table).expect("product table is a group")
    }

    /// Symmetric group S₃ as permutations of three points, composed
    /// left-to-right (element g·h acts as "g then h").
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
        let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
            [q[p[0]], q[p[1]], q[p[2]]]
        };
        let find = |p: &[usize; 3]| perms.iter().position(|x| x == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| perms.iter().map(|q| find(&compose(p, q))).collect())
            .collect();
        Self::from_table(&table).expect("S3 table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// k g k⁻¹.
    pub fn conj(&self, g: usize, k: usize) -> usize {
        self.mul(self.mul(k, g), self.inv(k))
    }

    /// α⁻¹ g α (conjugation by the inverse element).
    pub fn conj_by_inv(&self, g: usize, alpha: usize) -> usize {
        self.mul(self.mul(self.inv(alpha), g), alpha)
    }

    pub fn commute(&self, g: usize, h: usize) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

/// Z₂-valued 2-cocycle s on G×G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    s: Vec<u8>,
    order: usize,
}

/// Where a cocycle condition fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cocycle2Violation(pub usize, pub usize, pub usize);

impl Cocycle2 {
    pub fn from_table(group: &FiniteGroup, s: &[Vec<u8>]) -> Result<Self, Cocycle2Violation> {
        let n = group.order();
        assert!(s.len() == n && s.iter().all(|r| r.len() == n), "s must be n×n");
        let flat: Vec<u8> = s.iter().flat_map(|r| r.iter().map(|&x| x & 1)).collect();
        let c = Cocycle2 { s: flat, order: n };
        c.check(group)?;
        Ok(c)
    }

    /// The identically-zero cocycle.
    pub fn trivial(group: &FiniteGroup) -> Self {
        Cocycle2 {
            s: vec![0; group.order() * group.order()],
            order: group.order(),
        }
    }

    pub fn eval(&self, a: usize, b: usize) -> u8 {
        self.s[a * self.order + b]
    }

    /// Exhaustive check of the Z₂ 2-cocycle condition
    /// s(a,b) + s(ab,c) + s(a,bc) + s(b,c) ≡ 0 (mod 2), plus normalization.
    pub fn check(&self, group: &FiniteGroup) -> Result<(), Cocycle2Violation> {
        let n = group.order();
        for g in 0..n {
            if self.eval(0, g) != 0 || self.eval(g, 0) != 0 {
                return Err(Cocycle2Violation(0, g, 0));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.eval(a, b)
                        ^ self.eval(group.mul(a, b), c)
                        ^ self.eval(a, group.mul(b, c))
                        ^ self.eval(b, c);
                    if lhs != 0 {
                        return Err(Cocycle2Violation(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.eval(a, b)).collect())
            .collect()
    }

    pub fn is_symmetric_at(&self, g: usize, h: usize) -> bool {
        self.eval(g, h) == self.eval(h, g)
    }
}

/// U(1)-valued super-3-cocycle ω on G³ satisfying the graded pentagon
/// equation with respect to a 2-cocycle s.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperCocycle3<S: Scalar> {
    omega: Vec<S>,
    order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PentagonViolation(pub usize, pub usize, pub usize, pub usize);

impl<S: Scalar> SuperCocycle3<S> {
    pub fn from_values(group: &FiniteGroup, omega: Vec<S>) -> Self {
        assert_eq!(omega.len(), group.order().pow(3));
        SuperCocycle3 {
            omega,
            order: group.order(),
        }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        SuperCocycle3 {
            omega: vec![S::one(); group.order().pow(3)],
            order: group.order(),
        }
    }

    pub fn eval(&self, a: usize, b: usize, c: usize) -> S {
        self.omega[(a * self.order + b) * self.order + c].clone()
    }

    pub fn eval_inv(&self, a: usize, b: usize, c: usize) -> S {
        self.eval(a, b, c).inv()
    }

    pub fn is_normalized(&self) -> bool {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                for (x, y, z) in [(0, a, b), (a, 0, b), (a, b, 0)] {
                    if self.eval(x, y, z) != S::one() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Exhaustive check of the graded pentagon equation
    /// ω(a,b,c)·ω(a,bc,d)·ω(b,c,d) = (−1)^{s(a,b)s(c,d)}·ω(ab,c,d)·ω(a,b,cd).
    pub fn check_graded_pentagon(
        &self,
        group: &FiniteGroup,
        s: &Cocycle2,
        tol: f64,
    ) -> Result<(), PentagonViolation> {
        let n = group.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs = self.eval(a, b, c)
                            * self.eval(a, group.mul(b, c), d)
                            * self.eval(b, c, d);
                        let mut rhs =
                            self.eval(group.mul(a, b), c, d) * self.eval(a, b, group.mul(c, d));
                        if s.eval(a, b) & s.eval(c, d) == 1 {
                            rhs = -rhs;
                        }
                        if !lhs.approx_eq(&rhs, tol) {
                            return Err(PentagonViolation(a, b, c, d));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn values(&self) -> &[S] {
        &self.omega
    }
}

/// c_g(h,k) = ω(g,h,k)·ω(h,k,g) / ω(h,g,k).
pub fn c_omega<S: Scalar>(omega: &SuperCocycle3<S>, g: usize, h: usize, k: usize) -> S {
    omega.eval(g, h, k) * omega.eval(h, k, g) * omega.eval_inv(h, g, k)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("search space too large: {0} candidate branches exceed the bound {1}")]
    SearchSpaceTooLarge(u128, u128),
    #[error("root order must be positive")]
    BadRootOrder,
}

/// A normalized super-3-cocycle solution in exponent form: ω(a,b,c) =
/// exp(2πi·e(a,b,c)/n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentCocycle {
    pub root_order: i64,
    pub exponents: Vec<i64>,
    pub order: usize,
}

impl ExponentCocycle {
    pub fn eval(&self, a: usize, b: usize, c: usize) -> i64 {
        self.exponents[(a * self.order + b) * self.order + c]
    }

    pub fn to_scalar<S: Scalar>(&self) -> Option<SuperCocycle3<S>> {
        let vals: Option<Vec<S>> = self
            .exponents
            .iter()
            .map(|&e| S::root_of_unity(e, self.root_order))
            .collect();
        vals.map(|omega| SuperCocycle3 {
            omega,
            order: self.order,
        })
    }
}

/// Enumerate all normalized solutions of the graded pentagon equation with
/// values among n-th roots of unity.
///
/// Works in exponent arithmetic mod n: every pentagon quadruple yields a
/// linear relation; free entries are assigned by depth-first search with
/// eager propagation of fully-determined relations. An empty result means
/// no solution exists at this root order (the grading obstruction does not
/// trivialize there).
pub fn solve_graded_pentagon(
    group: &FiniteGroup,
    s: &Cocycle2,
    root_order: i64,
    branch_bound: u128,
) -> Result<Vec<ExponentCocycle>, SolveError> {
    if root_order < 1 {
        return Err(SolveError::BadRootOrder);
    }
    let n = group.order();
    let nn = root_order;
    // Entry index of ω(a,b,c).
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    // Free entries: all arguments non-identity. Others are pinned to 0.
    let free: Vec<usize> = (1..n)
        .flat_map(|a| (1..n).flat_map(move |b| (1..n).map(move |c| idx(a, b, c))))
        .collect();
    let free_pos: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    // Pentagon relations: e(a,b,c) + e(a,bc,d) + e(b,c,d) − e(ab,c,d)
    // − e(a,b,cd) ≡ rhs  (mod n), rhs = (n/2)·s(a,b)s(c,d).
    struct Relation {
        terms: Vec<(usize, i64)>, // (free-entry position, coefficient)
        rhs: i64,
    }
    let mut relations = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let graded = s.eval(a, b) & s.eval(c, d) == 1;
                    let mut rhs: i64 = if graded {
                        if nn % 2 != 0 {
                            // (−1) is not an n-th root of unity: no solution
                            // can exist once any graded quadruple appears.
                            return Ok(Vec::new());
                        }
                        nn / 2
                    } else {
                        0
                    };
                    let mut terms: Vec<(usize, i64)> = Vec::new();
                    let mut push = |e: usize, coeff: i64, terms: &mut Vec<(usize, i64)>| {
                        if let Some(&p) = free_pos.get(&e) {
                            terms.push((p, coeff));
                        }
                        // pinned entries contribute 0
                    };
                    push(idx(a, b, c), 1, &mut terms);
                    push(idx(a, group.mul(b, c), d), 1, &mut terms);
                    push(idx(b, c, d), 1, &mut terms);
                    push(idx(group.mul(a, b), c, d), -1, &mut terms);
                    push(idx(a, b, group.mul(c, d)), -1, &mut terms);
                    // Collapse duplicate positions.
                    terms.sort_by_key(|t| t.0);
                    let mut collapsed: Vec<(usize, i64)> = Vec::new();
                    for (p, co) in terms {
                        match collapsed.last_mut() {
                            Some(last) if last.0 == p => last.1 += co,
                            _ => collapsed.push((p, co)),
                        }
                    }
                    collapsed.retain(|t| t.1.rem_euclid(nn) != 0);
                    if collapsed.is_empty() {
                        if rhs.rem_euclid(nn) != 0 {
                            return Ok(Vec::new());
                        }
                        continue;
                    }
                    rhs = rhs.rem_euclid(nn);
                    relations.push(Relation {
                        terms: collapsed,
                        rhs,
                    });
                }
            }
        }
    }

    // Depth-first assignment in entry order with propagation: before
    // branching on entry i, apply every relation whose unknowns are all
    // < i (consistency check) or all < i except one equal to i with a unit
    // coefficient (forced value).
    let nf = free.len();
    // Relations indexed by their maximal unknown position.
    let mut by_max: Vec<Vec<usize>> = vec![Vec::new(); nf.max(1)];
    for (ri, r) in relations.iter().enumerate() {
        let mx = r.terms.iter().map(|t| t.0).max().unwrap();
        by_max[mx].push(ri);
    }

    let mut solutions = Vec::new();
    let mut assign: Vec<i64> = vec![0; nf];
    let mut branches: u128 = 0;

    // Returns Some(forced) when the relation determines entry `pos`, or
    // None when consistent/unresolvable; Err(()) signals contradiction.
    let eval_relation = |r: &Relation, assign: &[i64], upto: usize| -> Result<Option<i64>, ()> {
        let mut sum = 0i64;
        let mut pivot: Option<(usize, i64)> = None;
        for &(p, co) in &r.terms {
            if p < upto {
                sum += co * assign[p];
            } else if p == upto {
                pivot = Some((p, co));
            } else {
                return Ok(None);
            }
        }
        match pivot {
            None => {
                if (sum - r.rhs).rem_euclid(nn) != 0 {
                    Err(())
                } else {
                    Ok(None)
                }
            }
            Some((_, co)) => {
                // co·x ≡ rhs − sum (mod n); solve when gcd(co, n) divides.
                let target = (r.rhs - sum).rem_euclid(nn);
                let co = co.rem_euclid(nn);
                for x in 0..nn {
                    if (co * x).rem_euclid(nn) == target {
                        return Ok(Some(x));
                    }
                }
                Err(())
            }
        }
    };

    fn dfs(
        level: usize,
        nf: usize,
        nn: i64,
        assign: &mut Vec<i64>,
        by_max: &[Vec<usize>],
        relations: &[Relation],
        eval_relation: &dyn Fn(&Relation, &[i64], usize) -> Result<Option<i64>, ()>,
        solutions: &mut Vec<Vec<i64>>,
        branches: &mut u128,
        bound: u128,
    ) -> Result<(), SolveError> {
        if level == nf {
            solutions.push(assign.clone());
            return Ok(());
        }
        // A relation whose maximum unknown is `level` either forces the
        // value or will later check it; use the first forcing one.
        let mut forced: Option<i64> = None;
        for &ri in &by_max[level] {
            if let Ok(Some(x)) = eval_relation(&relations[ri], assign, level) {
                forced = Some(x);
                break;
            }
        }
        let candidates: Vec<i64> = match forced {
            Some(x) => vec![x],
            None => (0..nn).collect(),
        };
        for x in candidates {
            *branches += 1;
            if *branches > bound {
                return Err(SolveError::SearchSpaceTooLarge(*branches, bound));
            }
            assign[level] = x;
            let consistent = by_max[level].iter().all(|&ri| {
                matches!(
                    eval_relation(&relations[ri], assign, level + 1),
                    Ok(_)
                )
            });
            if consistent {
                dfs(
                    level + 1,
                    nf,
                    nn,
                    assign,
                    by_max,
                    relations,
                    eval_relation,
                    solutions,
                    branches,
                    bound,
                )?;
            }
        }
        Ok(())
    }

    let mut raw_solutions: Vec<Vec<i64>> = Vec::new();
    dfs(
        0,
        nf,
        nn,
        &mut assign,
        &by_max,
        &relations,
        &eval_relation,
        &mut raw_solutions,
        &mut branches,
        branch_bound,
    )?;

    let nnn = n * n * n;
    for sol in raw_solutions {
        let mut exponents = vec![0i64; nnn];
        for (i, &e) in free.iter().enumerate() {
            exponents[e] = sol[i];
        }
        solutions.push(ExponentCocycle {
            root_order: nn,
            exponents,
            order: n,
        });
    }
    Ok(solutions)
}

/// Orbit of a pair under simultaneous conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClass {
    pub representative: (usize, usize),
    pub members: Vec<(usize, usize)>,
}

/// Partition G×G into simultaneous-conjugation orbits; representatives are
/// the lexicographically least members, classes sorted by representative.
pub fn pair_conjugacy_classes(group: &FiniteGroup) -> Vec<PairClass> {
    let n = group.order();
    let mut seen = vec![false; n * n];
    let mut classes = Vec::new();
    for g in 0..n {
        for h in 0..n {
            if seen[g * n + h] {
                continue;
            }
            let mut members: Vec<(usize, usize)> = group
                .elements()
                .map(|t| (group.conj(g, t), group.conj(h, t)))
                .collect();
            members.sort();
            members.dedup();
            for &(a, b) in &members {
                seen[a * n + b] = true;
            }
            classes.push(PairClass {
                representative: members[0],
                members,
            });
        }
    }
    classes
}

/// {k : kg = gk and kh = hk}.
pub fn centralizer(group: &FiniteGroup, g: usize, h: usize) -> Vec<usize> {
    group
        .elements()
        .filter(|&k| group.commute(k, g) && group.commute(k, h))
        .collect()
}

/// A commuting pair class is c-regular iff c_g(h,k) = c_g(k,h) for every
/// centralizer element k.
pub fn is_c_regular<S: Scalar>(
    group: &FiniteGroup,
    omega: &SuperCocycle3<S>,
    class: &PairClass,
    tol: f64,
) -> bool {
    let (g, h) = class.representative;
    centralizer(group, g, h)
        .into_iter()
        .all(|k| c_omega(omega, g, h, k).approx_eq(&c_omega(omega, g, k, h), tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    #[test]
    fn z2_is_valid() {
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn missing_inverse_detected() {
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        // The broken table also fails associativity or identity first is
        // acceptable; this particular one fails associativity at (1,1,1):
        // (1·1)·1 = 1 but 1·(1·1) = 1 — actually equal, so inverse is the
        // first failure.
        assert!(matches!(
            err,
            GroupError::NoInverse(_) | GroupError::NotAssociative(..) | GroupError::NoIdentity(_)
        ));
    }

    #[test]
    fn s3_from_permutation_oracle() {
        // Oracle: compose permutations directly and compare tables.
        let g = FiniteGroup::symmetric3();
        assert_eq!(g.order(), 6);
        // Non-abelian witness.
        assert!(g.elements().any(|a| g.elements().any(|b| !g.commute(a, b))));
        // Every element's inverse composes to the identity.
        for a in g.elements() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    fn ftc_s(group: &FiniteGroup) -> Cocycle2 {
        Cocycle2::from_table(group, &[vec![0, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn ftc_two_cocycle_passes() {
        let z2 = FiniteGroup::cyclic(2);
        ftc_s(&z2); // construction includes the exhaustive check
        assert!(Cocycle2::trivial(&z2).check(&z2).is_ok());
    }

    #[test]
    fn broken_two_cocycle_detected() {
        let z2 = FiniteGroup::cyclic(2);
        // s(0,1) = 1 violates normalization/cocycle at (0,1,1).
        let res = Cocycle2::from_table(&z2, &[vec![0, 1], vec![0, 0]]);
        assert!(res.is_err());
    }

    #[test]
    fn ftc_pentagon_and_census() {
        let z2 = FiniteGroup::cyclic(2);
        let s = ftc_s(&z2);
        // ω(1,1,1) = ±i are the only normalized solutions among 4th roots.
        let sols = solve_graded_pentagon(&z2, &s, 4, 1 << 20).unwrap();
        assert_eq!(sols.len(), 2);
        let mut entries: Vec<i64> = sols.iter().map(|c| c.eval(1, 1, 1)).collect();
        entries.sort();
        assert_eq!(entries, vec![1, 3]); // exp(2πi/4) = i and exp(6πi/4) = −i
        for sol in &sols {
            let omega: SuperCocycle3<Exact> = sol.to_scalar().unwrap();
            assert!(omega.check_graded_pentagon(&z2, &s, 0.0).is_ok());
            assert!(omega.is_normalized());
        }
        // No solutions among square roots of unity.
        let none = solve_graded_pentagon(&z2, &s, 2, 1 << 20).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn bosonic_pentagon_census() {
        let z2 = FiniteGroup::cyclic(2);
        let s0 = Cocycle2::trivial(&z2);
        let sols = solve_graded_pentagon(&z2, &s0, 2, 1 << 20).unwrap();
        // Toric code (ω ≡ 1) and double semion (ω(1,1,1) = −1).
        assert_eq!(sols.len(), 2);
        let mut entries: Vec<i64> = sols.iter().map(|c| c.eval(1, 1, 1)).collect();
        entries.sort();
        assert_eq!(entries, vec![0, 1]);
    }

    #[test]
    fn graded_pentagon_violation_found() {
        let z2 = FiniteGroup::cyclic(2);
        let s = ftc_s(&z2);
        let omega: SuperCocycle3<Exact> = SuperCocycle3::trivial(&z2);
        let err = omega.check_graded_pentagon(&z2, &s, 0.0).unwrap_err();
        assert_eq!(err, PentagonViolation(1, 1, 1, 1));
    }

    #[test]
    fn c_omega_ftc_value() {
        let z2 = FiniteGroup::cyclic(2);
        let s = ftc_s(&z2);
        let omega: SuperCocycle3<Exact> = solve_graded_pentagon(&z2, &s, 4, 1 << 20)
            .unwrap()
            .into_iter()
            .find(|c| c.eval(1, 1, 1) == 1)
            .unwrap()
            .to_scalar()
            .unwrap();
        // c₁(1,1) = ω(1,1,1)·ω(1,1,1)/ω(1,1,1) = i.
        assert_eq!(c_omega(&omega, 1, 1, 1), Exact::i());
        // Identity anywhere gives 1.
        assert_eq!(c_omega(&omega, 0, 1, 1), Exact::one());
    }

    #[test]
    fn pair_classes_z2_and_s3() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(pair_conjugacy_classes(&z2).len(), 4);
        let triv = FiniteGroup::cyclic(1);
        assert_eq!(pair_conjugacy_classes(&triv).len(), 1);

        // Burnside oracle for S₃: orbit count = (1/|G|) Σ_t |Fix(t)| where
        // Fix(t) = pairs fixed by simultaneous conjugation.
        let s3 = FiniteGroup::symmetric3();
        let n = s3.order();
        let mut fix_sum = 0usize;
        for t in s3.elements() {
            for g in s3.elements() {
                for h in s3.elements() {
                    if s3.conj(g, t) == g && s3.conj(h, t) == h {
                        fix_sum += 1;
                    }
                }
            }
        }
        let classes = pair_conjugacy_classes(&s3);
        assert_eq!(classes.len(), fix_sum / n);
        // Partition property: disjoint cover of G×G.
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, n * n);
    }

    #[test]
    fn centralizer_examples() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(centralizer(&z2, 1, 1), vec![0, 1]);
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(centralizer(&s3, 0, 0).len(), 6);
        // A transposition paired with the identity centralizes to {e, g}.
        let transposition = (0..6).find(|&g| g != 0 && s3.mul(g, g) == 0).unwrap();
        let z = centralizer(&s3, transposition, 0);
        assert_eq!(z.len(), 2);
        assert!(z.contains(&transposition));
    }

    #[test]
    fn c_regularity_ftc_and_bosonic() {
        let z2 = FiniteGroup::cyclic(2);
        let s = ftc_s(&z2);
        let omega: SuperCocycle3<Exact> = solve_graded_pentagon(&z2, &s, 4, 1 << 20)
            .unwrap()[0]
            .to_scalar()
            .unwrap();
        for class in pair_conjugacy_classes(&z2) {
            assert!(is_c_regular(&z2, &omega, &class, 0.0));
        }
        let triv: SuperCocycle3<Exact> = SuperCocycle3::trivial(&z2);
        for class in pair_conjugacy_classes(&z2) {
            assert!(is_c_regular(&z2, &triv, &class, 0.0));
        }
    }

    #[test]
    fn c_cocycle_identity_on_centralizers() {
        // For mutually commuting g, x, y, z with x,y,z in Z(g,h), c_g is a
        // 2-cocycle: c_g(x,y)c_g(xy,z) = c_g(x,yz)c_g(y,z).
        let z2 = FiniteGroup::cyclic(2);
        let s = ftc_s(&z2);
        for sol in solve_graded_pentagon(&z2, &s, 4, 1 << 20).unwrap() {
            let omega: SuperCocycle3<Exact> = sol.to_scalar().unwrap();
            for g in z2.elements() {
                for x in z2.elements() {
                    for y in z2.elements() {
                        for z in z2.elements() {
                            let lhs = c_omega(&omega, g, x, y)
                                * c_omega(&omega, g, z2.mul(x, y), z);
                            let rhs = c_omega(&omega, g, x, z2.mul(y, z))
                                * c_omega(&omega, g, y, z);
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}
