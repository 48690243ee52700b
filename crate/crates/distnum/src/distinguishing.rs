//! Exact distinguishing numbers: the canonical-form backtracking solver,
//! regular-set search, the closed-form predictor, the constructive
//! labelings, and the classifier for faithful symmetric-group actions.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::constructions::{CanonicalAction, Table1Row};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::iso::find_isomorphism_to_symmetric;

/// Orbit-size census of a faithful `S_n` action: `k` orbits of size `n`,
/// `r` of size `2n`, `s` of size 2, `t` fixed points.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct OrbitProfile {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

impl OrbitProfile {
    /// Tuple length: each size-`n` orbit contributes one coordinate, each
    /// size-`2n` orbit two.
    pub fn m(&self) -> usize {
        self.k + 2 * self.r
    }

    pub fn degree(&self) -> usize {
        self.k * self.n + 2 * self.r * self.n + 2 * self.s + self.t
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DistinguishingResult {
    pub d: u32,
    pub witness: Vec<u32>,
    /// True when the search proved that `d - 1` labels do not suffice.
    /// Always true for this exact solver.
    pub exhausted: bool,
}

/// True iff no non-identity element of `g` preserves the labeling.
pub fn is_distinguishing(g: &PermGroup, labels: &[u32]) -> Result<bool> {
    if labels.len() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            got: labels.len(),
        });
    }
    Ok(g.elements().iter().all(|e| {
        e.is_identity() || (0..g.degree()).any(|x| labels[e.apply(x)] != labels[x])
    }))
}

struct SearchElement {
    fwd: Vec<usize>,
    inv: Vec<usize>,
    support_max: usize,
}

struct Search {
    elems: Vec<SearchElement>,
    degree: usize,
    d: u32,
    start: Instant,
    deadline: Option<Instant>,
    nodes: u64,
}

enum Step {
    Found,
    Dead,
}

impl Search {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if let Some(dl) = self.deadline {
            if Instant::now() > dl {
                return Err(Error::BudgetExceeded(self.start.elapsed().as_millis()));
            }
        }
        Ok(())
    }

    /// Extends a partial labeling at point `p`. Labels are tried in
    /// increasing order and a new label value may only be introduced once
    /// all smaller values appear earlier, so the first full labeling found
    /// is the lexicographically least one in canonical form.
    fn assign(&mut self, labels: &mut [u32], p: usize, max_used: u32, alive: &[usize]) -> Result<Option<Step>> {
        self.tick()?;
        let top = self.d.min(max_used + 1);
        for label in 1..=top {
            labels[p] = label;
            let mut survivors = Vec::with_capacity(alive.len());
            let mut stuck = false;
            for &idx in alive {
                let e = &self.elems[idx];
                let a = e.fwd[p];
                let b = e.inv[p];
                if (a < p && labels[a] != label) || (b < p && labels[b] != label) {
                    continue; // killed: it cannot preserve this labeling
                }
                if e.support_max <= p {
                    // Every point it moves is already labeled consistently,
                    // so no extension of this branch can kill it.
                    stuck = true;
                    break;
                }
                survivors.push(idx);
            }
            if stuck {
                continue;
            }
            if survivors.is_empty() {
                for q in p + 1..self.degree {
                    labels[q] = 1;
                }
                return Ok(Some(Step::Found));
            }
            if p + 1 < self.degree {
                if let Some(Step::Found) =
                    self.assign(labels, p + 1, max_used.max(label), &survivors)?
                {
                    return Ok(Some(Step::Found));
                }
            }
        }
        labels[p] = 0;
        Ok(Some(Step::Dead))
    }
}

/// The lexicographically least canonical distinguishing `d`-labeling of
/// `g`, or `None` when no `d`-labeling distinguishes.
pub fn search_with_d(
    g: &PermGroup,
    d: u32,
    start: Instant,
    deadline: Option<Instant>,
) -> Result<Option<Vec<u32>>> {
    if d == 0 {
        return Ok(None);
    }
    let degree = g.degree();
    let elems: Vec<SearchElement> = g
        .elements()
        .iter()
        .filter(|e| !e.is_identity())
        .map(|e| SearchElement {
            fwd: e.images().to_vec(),
            inv: e.inverse().images().to_vec(),
            support_max: e.support_max().expect("non-identity"),
        })
        .collect();
    if elems.is_empty() {
        return Ok(Some(vec![1; degree]));
    }
    let mut search = Search {
        elems,
        degree,
        d,
        start,
        deadline,
        nodes: 0,
    };
    let mut labels = vec![0u32; degree];
    let alive: Vec<usize> = (0..search.elems.len()).collect();
    match search.assign(&mut labels, 0, 0, &alive)? {
        Some(Step::Found) => Ok(Some(labels)),
        _ => Ok(None),
    }
}

/// Exact `D(G, X)` with the canonical witness; searches `d` upward from 1.
pub fn distinguishing_number(g: &PermGroup, budget: Option<Duration>) -> Result<DistinguishingResult> {
    let start = Instant::now();
    let deadline = budget.map(|b| start + b);
    for d in 1..=(g.degree() as u32) {
        if let Some(witness) = search_with_d(g, d, start, deadline)? {
            return Ok(DistinguishingResult {
                d,
                witness,
                exhausted: true,
            });
        }
    }
    Err(Error::Invalid(
        "all-distinct labels must distinguish; unreachable".into(),
    ))
}

/// A subset with trivial setwise stabilizer, if one exists. Equivalent to
/// `D <= 2` for nontrivial groups; the trivial group gets the empty set.
pub fn regular_set(g: &PermGroup, budget: Option<Duration>) -> Result<Option<Vec<usize>>> {
    if g.is_trivial() {
        return Ok(Some(Vec::new()));
    }
    let start = Instant::now();
    let deadline = budget.map(|b| start + b);
    Ok(search_with_d(g, 2, start, deadline)?.map(|labels| {
        (0..g.degree()).filter(|&x| labels[x] == 2).collect()
    }))
}

/// Least `v >= 1` with `v^k >= x`, in integer arithmetic.
pub fn integer_root_ceil(x: u64, k: u32) -> u64 {
    assert!(k >= 1);
    if x <= 1 {
        return 1;
    }
    let mut lo = 1u64; // v^k < x
    let mut hi = x; // v^k >= x
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_pow(k) {
            Some(p) if p < x => lo = mid,
            _ => hi = mid,
        }
    }
    hi
}

/// The closed-form distinguishing number for a faithful profile:
/// `ceil(n^(1/k))` when there is no orbit of size 2 or `2n`, otherwise
/// `ceil((n-1)^(1/(k+2r)))`.
pub fn predicted_d(p: &OrbitProfile) -> Result<u32> {
    if p.n < 3 || p.k + p.r == 0 {
        return Err(Error::Invalid(format!(
            "profile needs n >= 3 and k + r > 0, got n={}, k={}, r={}",
            p.n, p.k, p.r
        )));
    }
    let d = if p.r == 0 && p.s == 0 {
        integer_root_ceil(p.n as u64, p.k as u32)
    } else {
        integer_root_ceil(p.n as u64 - 1, p.m() as u32)
    };
    Ok(d as u32)
}

fn checked_power(d: u32, m: usize) -> u64 {
    (d as u64).checked_pow(m as u32).unwrap_or(u64::MAX)
}

fn digits(mut i: usize, m: usize, d: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push((i % d as usize) as u32);
        i /= d as usize;
    }
    out
}

/// A distinguishing `d`-labeling of the profile `(n, k, 0, 0, t)` action:
/// point `i` of orbit `j` gets digit `j` of `i` in base `d`. Needs
/// `d^k >= n` so the `k`-tuples are pairwise distinct.
pub fn product_labeling(n: usize, k: usize, t: usize, d: u32) -> Result<Vec<u32>> {
    if k == 0 || d == 0 {
        return Err(Error::Invalid("need k >= 1 and d >= 1".into()));
    }
    if checked_power(d, k) < n as u64 {
        return Err(Error::Infeasible(format!("{d}^{k} < {n}")));
    }
    let mut labels = Vec::with_capacity(k * n + t);
    for j in 0..k {
        for i in 0..n {
            labels.push(digits(i, k, d)[j] + 1);
        }
    }
    labels.extend(std::iter::repeat(1).take(t));
    Ok(labels)
}

fn column_multiset(tuples: &[Vec<u32>], c: usize) -> Vec<u32> {
    let mut col: Vec<u32> = tuples.iter().map(|t| t[c]).collect();
    col.sort_unstable();
    col
}

/// At most one tuple value repeated, none occurring three times. The one
/// allowed duplicate pair corresponds to a transposition, which is odd and
/// so is killed by a sign-sensitive orbit.
fn duplicates_admissible(tuples: &[Vec<u32>]) -> bool {
    let mut sorted = tuples.to_vec();
    sorted.sort();
    let mut pairs = 0;
    for w in sorted.windows(3) {
        if w[0] == w[2] {
            return false;
        }
    }
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            pairs += 1;
        }
    }
    pairs <= 1
}

/// A distinguishing `d`-labeling of the canonical profile action when a
/// sign-sensitive orbit exists (`r + s > 0`). Points of orbit `j` carry
/// coordinate values of per-point `m`-tuples; size-`2n` orbits use two
/// coordinates (one per half), the first size-2 orbit gets two distinct
/// labels, and when every size-`2n` orbit has equal label multisets on its
/// two halves one coordinate of one point is modified so they differ
/// (otherwise an odd element exchanging the halves could survive).
pub fn alternating_labeling(p: &OrbitProfile, d: u32) -> Result<Vec<u32>> {
    let (n, k, r, s, t) = (p.n, p.k, p.r, p.s, p.t);
    let m = p.m();
    if n < 3 || k + r == 0 || r + s == 0 {
        return Err(Error::Invalid(format!(
            "profile needs n >= 3, k + r > 0 and a sign-sensitive orbit, got {p:?}"
        )));
    }
    if checked_power(d, m) < n as u64 - 1 {
        return Err(Error::Infeasible(format!("{d}^{m} < {}", n - 1)));
    }
    if s > 0 && d < 2 {
        return Err(Error::Infeasible(
            "a size-2 orbit needs two distinct labels".into(),
        ));
    }
    let pow = checked_power(d, m);
    let mut tuples: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            if (i as u64) < pow {
                digits(i, m, d)
            } else {
                digits(0, m, d)
            }
        })
        .collect();
    if s == 0 {
        let halves_differ = |tuples: &[Vec<u32>]| {
            (0..r).any(|j| {
                column_multiset(tuples, k + 2 * j) != column_multiset(tuples, k + 2 * j + 1)
            })
        };
        if !halves_differ(&tuples) {
            let c0 = k;
            let mut repaired = false;
            'repair: for i0 in 0..n {
                for v in 0..d {
                    if v == tuples[i0][c0] {
                        continue;
                    }
                    let old = tuples[i0][c0];
                    tuples[i0][c0] = v;
                    if duplicates_admissible(&tuples) && halves_differ(&tuples) {
                        repaired = true;
                        break 'repair;
                    }
                    tuples[i0][c0] = old;
                }
            }
            if !repaired {
                return Err(Error::Infeasible(
                    "no half-multiset repair found".into(),
                ));
            }
        }
    }
    if !duplicates_admissible(&tuples) {
        return Err(Error::Infeasible("tuple duplicates exceed one pair".into()));
    }
    let mut labels = vec![0u32; p.degree()];
    for j in 0..k {
        for i in 0..n {
            labels[j * n + i] = tuples[i][j] + 1;
        }
    }
    for j in 0..r {
        for i in 0..n {
            for half in 0..2 {
                labels[k * n + j * 2 * n + half * n + i] = tuples[i][k + 2 * j + half] + 1;
            }
        }
    }
    for j in 0..s {
        let base = k * n + 2 * r * n + 2 * j;
        labels[base] = 1;
        labels[base + 1] = if j == 0 { 2 } else { 1 };
    }
    for j in 0..t {
        labels[k * n + 2 * r * n + 2 * s + j] = 1;
    }
    Ok(labels)
}

/// The labeling construction matching the profile: pure product form when
/// every orbit has size `n` or 1, sign-aware form otherwise.
pub fn constructive_labeling(p: &OrbitProfile, d: u32) -> Result<Vec<u32>> {
    if p.r == 0 && p.s == 0 {
        product_labeling(p.n, p.k, p.t, d)
    } else {
        alternating_labeling(p, d)
    }
}

/// Labeling for a canonical profile action, in its point layout.
pub fn canonical_labeling(act: &CanonicalAction, d: u32) -> Result<Vec<u32>> {
    constructive_labeling(
        &OrbitProfile {
            n: act.n,
            k: act.k,
            r: act.r,
            s: act.s,
            t: act.t,
        },
        d,
    )
}

/// Counts orbit sizes into a profile; any size outside `{1, 2, n, 2n}`
/// raises the large-orbit signal (such orbits admit regular sets instead).
pub fn orbit_profile(g: &PermGroup, n: usize) -> Result<OrbitProfile> {
    let mut p = OrbitProfile {
        n,
        k: 0,
        r: 0,
        s: 0,
        t: 0,
    };
    for orbit in g.orbits() {
        match orbit.len() {
            1 => p.t += 1,
            2 => p.s += 1,
            sz if sz == n => p.k += 1,
            sz if sz == 2 * n => p.r += 1,
            sz => return Err(Error::LargeOrbit { size: sz }),
        }
    }
    Ok(p)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Classification {
    /// All orbits are of the standard types; the closed formula applies.
    Formula { profile: OrbitProfile, d: u32 },
    /// One of the exceptional rows, with its known distinguishing number.
    Exception {
        row_label: String,
        s: usize,
        t: usize,
        d: u32,
    },
    /// None of the above: a regular set exists, so `d = 2`.
    RegularSet { set: Vec<usize>, d: u32 },
}

impl Classification {
    pub fn d(&self) -> u32 {
        match self {
            Classification::Formula { d, .. } => *d,
            Classification::Exception { d, .. } => *d,
            Classification::RegularSet { d, .. } => *d,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub n: usize,
    pub outcome: Classification,
    /// Whether the solver confirmed the reported value within budget.
    pub checked: bool,
}

fn factorial_arg(order: usize) -> Option<usize> {
    let mut f = 1usize;
    for n in 1..=10 {
        f *= n;
        if f == order {
            return Some(n);
        }
        if f > order {
            return None;
        }
    }
    None
}

/// Whether two transitive orbits of `g` carry point-equivalent actions:
/// some bijection of the orbits conjugates one restriction into the other.
/// Since the orbits are transitive the bijection is determined by the
/// image of one point, so each candidate image is propagated and checked.
fn orbits_equivalent(g: &PermGroup, o1: &[usize], o2: &[usize]) -> bool {
    if o1.len() != o2.len() {
        return false;
    }
    let pos = |orbit: &[usize], x: usize| orbit.iter().position(|&y| y == x).unwrap();
    let gens = g.generators();
    'candidate: for first in 0..o2.len() {
        let mut map = vec![usize::MAX; o1.len()];
        map[0] = first;
        let mut queue = vec![0usize];
        let mut seen = vec![false; o2.len()];
        seen[first] = true;
        while let Some(x) = queue.pop() {
            for gen in gens {
                let fx = pos(o1, gen.apply(o1[x]));
                let fy = pos(o2, gen.apply(o2[map[x]]));
                if map[fx] == usize::MAX {
                    if seen[fy] {
                        continue 'candidate;
                    }
                    map[fx] = fy;
                    seen[fy] = true;
                    queue.push(fx);
                } else if map[fx] != fy {
                    continue 'candidate;
                }
            }
        }
        return true;
    }
    false
}

/// Classifies a faithful action of some `S_n` (3 <= n <= 7): formula case,
/// exceptional row, or regular set. When the solver finishes within budget
/// the reported value is cross-checked exactly.
pub fn classify(g: &PermGroup, budget: Option<Duration>) -> Result<ClassifyReport> {
    let n = factorial_arg(g.order())
        .filter(|&n| (3..=7).contains(&n))
        .ok_or_else(|| {
            Error::Invalid(format!(
                "order {} is not n! for any n in 3..=7",
                g.order()
            ))
        })?;
    let iso = find_isomorphism_to_symmetric(g, n)?.ok_or_else(|| {
        Error::Invalid(format!(
            "group of order {} is not isomorphic to the symmetric group on {n} letters",
            g.order()
        ))
    })?;
    let mut profile = OrbitProfile {
        n,
        k: 0,
        r: 0,
        s: 0,
        t: 0,
    };
    let mut natural_orbits: Vec<Vec<usize>> = Vec::new();
    let mut other: Vec<Vec<usize>> = Vec::new();
    for orbit in g.orbits() {
        match orbit.len() {
            1 => profile.t += 1,
            2 => profile.s += 1,
            sz if sz == n => {
                if g.kernel_on_subset(&orbit)?.order() == 1 {
                    profile.k += 1;
                    natural_orbits.push(orbit);
                } else {
                    other.push(orbit);
                }
            }
            sz if sz == 2 * n => {
                // The standard size-2n orbit is the coset action on
                // A_{n-1}: its point stabilizers consist of even elements.
                let stab = g.point_stabilizer(orbit[0]);
                let all_even = stab
                    .group()
                    .elements()
                    .iter()
                    .all(|e| iso.apply(e).expect("group element").is_even());
                if all_even {
                    profile.r += 1;
                } else {
                    other.push(orbit);
                }
            }
            _ => other.push(orbit),
        }
    }
    let outcome = classify_outcome(g, n, profile, &natural_orbits, &other, budget)?;
    let mut checked = false;
    match distinguishing_number(g, budget) {
        Ok(res) => {
            if res.d != outcome.d() {
                return Err(Error::Invalid(format!(
                    "classification value {} disagrees with solver value {}",
                    outcome.d(),
                    res.d
                )));
            }
            checked = true;
        }
        Err(Error::BudgetExceeded(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(ClassifyReport {
        n,
        outcome,
        checked,
    })
}

fn exception(row: Table1Row, s: usize, t: usize) -> Classification {
    Classification::Exception {
        row_label: row.label().to_string(),
        s,
        t,
        d: row.expected_d(),
    }
}

fn classify_outcome(
    g: &PermGroup,
    n: usize,
    profile: OrbitProfile,
    natural_orbits: &[Vec<usize>],
    other: &[Vec<usize>],
    budget: Option<Duration>,
) -> Result<Classification> {
    if other.is_empty() {
        // Two size-6 orbits of S_6 can be glued by the nonpermutation
        // automorphism; that pair is exceptional, every point-equivalent
        // gluing follows the formula.
        if n == 6
            && profile.k == 2
            && profile.r == 0
            && !orbits_equivalent(g, &natural_orbits[0], &natural_orbits[1])
        {
            return Ok(exception(Table1Row::S6PsiS6S2, profile.s, profile.t));
        }
        return Ok(Classification::Formula {
            profile,
            d: predicted_d(&profile)?,
        });
    }
    if let [orbit] = other {
        let faithful = g.kernel_on_subset(orbit)?.order() == 1;
        let row = match (n, orbit.len(), profile.k, profile.r, profile.s) {
            (4, 6, 0, 0, 0) if faithful => {
                let stab = g.point_stabilizer(orbit[0]);
                if stab.group().elements().iter().any(|e| e.order() == 4) {
                    Some(Table1Row::S4_6c)
                } else {
                    Some(Table1Row::S4_6d)
                }
            }
            // A natural orbit glued to a natural S_3 orbit over the Klein
            // kernel.
            (4, 3, 1, 0, 0) if g.kernel_on_subset(orbit)?.order() == 4 => {
                Some(Table1Row::S4K4S3)
            }
            (5, 6, 0, 0, 0) if faithful => Some(Table1Row::Pgl25),
            (5, 6, 0, 0, _) if faithful => Some(Table1Row::Pgl25PslS2),
            (5, 10, 0, 0, 0) => Some(Table1Row::PetersenAut),
            (6, 10, 0, 0, _) => Some(Table1Row::S6On10S2),
            _ => None,
        };
        if let Some(row) = row {
            return Ok(exception(row, profile.s, profile.t));
        }
    }
    match regular_set(g, budget)? {
        Some(set) => Ok(Classification::RegularSet { set, d: 2 }),
        None => Err(Error::Infeasible(
            "unclassified action with no regular set".into(),
        )),
    }
}
