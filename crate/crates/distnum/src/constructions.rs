//! Builders for the permutation groups under study: natural and alternating
//! actions, coset actions, direct/subdirect/parallel sums, the outer
//! automorphism of S6, and the named exceptional groups.

use crate::error::{Error, Result};
use crate::group::{PermGroup, Subgroup, DEFAULT_ELEMENT_CAP, MAX_DEGREE};
use crate::iso::{search_isomorphism_with_candidates, GroupIsomorphism};
use crate::perm::Permutation;

/// The natural symmetric group on `n` points.
pub fn symmetric_natural(n: usize) -> Result<PermGroup> {
    if n == 0 || n > 8 {
        return Err(Error::Invalid(format!("supported range is 1..=8, got {n}")));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let swap = Permutation::from_cycles(n, &[vec![0, 1]])?;
    let cycle = Permutation::from_cycles(n, &[(0..n).collect()])?;
    PermGroup::generate(n, vec![swap, cycle])
}

/// The natural alternating group on `n` points.
pub fn alternating_natural(n: usize) -> Result<PermGroup> {
    let sn = symmetric_natural(n)?;
    PermGroup::from_elements(n, sn.even_elements())
}

pub fn cyclic_natural(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::Invalid("cyclic group needs n >= 1".into()));
    }
    let cycle = Permutation::from_cycles(n, &[(0..n).collect()])?;
    PermGroup::generate(n, vec![cycle])
}

/// The right coset space `G:H` with lexicographically least coset
/// representatives, plus a coset lookup per group element.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    parent: PermGroup,
    subgroup: PermGroup,
    reps: Vec<Permutation>,
    /// Coset index of each parent element, aligned with sorted element order.
    coset_of: Vec<usize>,
}

impl CosetSpace {
    pub fn new(parent: &PermGroup, subgroup: &PermGroup) -> Result<CosetSpace> {
        if subgroup.degree() != parent.degree()
            || !subgroup.elements().iter().all(|h| parent.contains(h))
        {
            return Err(Error::NotASubgroup);
        }
        let n = parent.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for (idx, g) in parent.elements().iter().enumerate() {
            if coset_of[idx] != usize::MAX {
                continue;
            }
            let c = reps.len();
            for h in subgroup.elements() {
                let hg = h.then(g);
                let j = parent.index_of(&hg).ok_or(Error::NotASubgroup)?;
                coset_of[j] = c;
            }
            reps.push(g.clone());
        }
        Ok(CosetSpace {
            parent: parent.clone(),
            subgroup: subgroup.clone(),
            reps,
            coset_of,
        })
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn coset_index(&self, g: &Permutation) -> Option<usize> {
        self.parent.index_of(g).map(|i| self.coset_of[i])
    }

    /// Coset multiplication table on representatives. Only well defined as a
    /// group table when the subgroup is normal.
    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        let q = self.index();
        let mut table = vec![vec![0; q]; q];
        for i in 0..q {
            for j in 0..q {
                table[i][j] = self
                    .coset_index(&self.reps[i].then(&self.reps[j]))
                    .expect("closure");
            }
        }
        table
    }
}

/// The action of `G` on the coset space `G:H` by right multiplication.
/// Returns the image permutation group on `index` points together with the
/// kernel (the core of `H` in `G`); the action is faithful iff the kernel
/// is trivial.
pub fn coset_action(parent: &PermGroup, subgroup: &PermGroup) -> Result<(PermGroup, Subgroup)> {
    let cs = CosetSpace::new(parent, subgroup)?;
    let degree = cs.index();
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_DEGREE,
        });
    }
    let mut action_perms = Vec::with_capacity(parent.order());
    let mut kernel_elems = Vec::new();
    for e in parent.elements() {
        let images: Vec<usize> = cs
            .reps
            .iter()
            .map(|r| cs.coset_index(&r.then(e)).expect("closure"))
            .collect();
        let p = Permutation::from_images(images)?;
        if p.is_identity() {
            kernel_elems.push(e.clone());
        }
        action_perms.push(p);
    }
    action_perms.sort_unstable();
    action_perms.dedup();
    let image = PermGroup::from_elements(degree, action_perms)?;
    let kernel = Subgroup::new(parent, kernel_elems)?;
    Ok((image, kernel))
}

fn combine_blocks(p1: &Permutation, p2: &Permutation) -> Permutation {
    let m1 = p1.degree();
    let mut images: Vec<usize> = p1.images().to_vec();
    images.extend(p2.images().iter().map(|&x| x + m1));
    Permutation::from_images(images).expect("block sum of bijections")
}

/// `G1 ⊕ G2`: both groups acting independently on the disjoint union.
pub fn direct_sum(g1: &PermGroup, g2: &PermGroup) -> Result<PermGroup> {
    let degree = g1.degree() + g2.degree();
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_DEGREE,
        });
    }
    let order = g1
        .order()
        .checked_mul(g2.order())
        .filter(|&o| o <= DEFAULT_ELEMENT_CAP)
        .ok_or(Error::GroupTooLarge {
            cap: DEFAULT_ELEMENT_CAP,
        })?;
    let mut elems = Vec::with_capacity(order);
    for a in g1.elements() {
        for b in g2.elements() {
            elems.push(combine_blocks(a, b));
        }
    }
    PermGroup::from_elements(degree, elems)
}

/// `G ⊕ I_t`: the fixed-point extension.
pub fn with_fixed_points(g: &PermGroup, t: usize) -> Result<PermGroup> {
    if t == 0 {
        return Ok(g.clone());
    }
    direct_sum(g, &PermGroup::trivial(t))
}

/// `G^(r)`: the parallel multiple, acting identically on `r` disjoint copies.
pub fn parallel_power(g: &PermGroup, r: usize) -> Result<PermGroup> {
    if r == 0 {
        return Err(Error::Invalid("parallel multiple needs r >= 1".into()));
    }
    let degree = g.degree() * r;
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_DEGREE,
        });
    }
    let elems = g
        .elements()
        .iter()
        .map(|e| {
            let mut images = Vec::with_capacity(degree);
            for copy in 0..r {
                images.extend(e.images().iter().map(|&x| x + copy * g.degree()));
            }
            Permutation::from_images(images).expect("replicated bijection")
        })
        .collect();
    PermGroup::from_elements(degree, elems)
}

/// Parallel sum glued by an explicit abstract isomorphism: the group of all
/// `(g, φ(g))` on the disjoint union of the two point sets.
pub fn parallel_sum_via(phi: &GroupIsomorphism) -> Result<PermGroup> {
    let g1 = phi.source();
    let degree = g1.degree() + phi.target().degree();
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_DEGREE,
        });
    }
    let elems = g1
        .elements()
        .iter()
        .map(|e| combine_blocks(e, phi.apply(e).expect("image of source element")))
        .collect();
    PermGroup::from_elements(degree, elems)
}

/// A validated factor-group isomorphism `φ : G1/H1 → G2/H2`, given as a
/// pairing of coset indices over the lex-least representative spaces.
#[derive(Clone, Debug)]
pub struct QuotientIso {
    left: CosetSpace,
    right: CosetSpace,
    pairing: Vec<usize>,
}

impl QuotientIso {
    pub fn new(
        g1: &PermGroup,
        h1: &PermGroup,
        g2: &PermGroup,
        h2: &PermGroup,
        pairing: Vec<usize>,
    ) -> Result<QuotientIso> {
        let left = CosetSpace::new(g1, h1)?;
        let right = CosetSpace::new(g2, h2)?;
        let q = left.index();
        if right.index() != q {
            return Err(Error::InvalidPairing(format!(
                "factor groups have different orders {} and {}",
                q,
                right.index()
            )));
        }
        if !Subgroup::from_group(g1, h1.clone())?.is_normal() {
            return Err(Error::InvalidPairing("left subgroup is not normal".into()));
        }
        if !Subgroup::from_group(g2, h2.clone())?.is_normal() {
            return Err(Error::InvalidPairing("right subgroup is not normal".into()));
        }
        if pairing.len() != q {
            return Err(Error::InvalidPairing("pairing has the wrong length".into()));
        }
        let mut seen = vec![false; q];
        for &v in &pairing {
            if v >= q || seen[v] {
                return Err(Error::InvalidPairing("pairing is not a bijection".into()));
            }
            seen[v] = true;
        }
        let t1 = left.multiplication_table();
        let t2 = right.multiplication_table();
        for i in 0..q {
            for j in 0..q {
                if pairing[t1[i][j]] != t2[pairing[i]][pairing[j]] {
                    return Err(Error::InvalidPairing(format!(
                        "pairing is not multiplicative at cosets ({i}, {j})"
                    )));
                }
            }
        }
        Ok(QuotientIso {
            left,
            right,
            pairing,
        })
    }

    /// Searches for a factor-group isomorphism, returning the first pairing
    /// in lexicographic order; `None` when the factor groups are not
    /// isomorphic.
    pub fn find(
        g1: &PermGroup,
        h1: &PermGroup,
        g2: &PermGroup,
        h2: &PermGroup,
    ) -> Result<Option<QuotientIso>> {
        let left = CosetSpace::new(g1, h1)?;
        let right = CosetSpace::new(g2, h2)?;
        if !Subgroup::from_group(g1, h1.clone())?.is_normal()
            || !Subgroup::from_group(g2, h2.clone())?.is_normal()
        {
            return Err(Error::InvalidPairing("subgroup is not normal".into()));
        }
        let q = left.index();
        if right.index() != q {
            return Ok(None);
        }
        let t1 = left.multiplication_table();
        let t2 = right.multiplication_table();
        let mut pairing = vec![usize::MAX; q];
        let mut used = vec![false; q];
        if !pair_search(&t1, &t2, &mut pairing, &mut used, 0) {
            return Ok(None);
        }
        Ok(Some(QuotientIso {
            left,
            right,
            pairing,
        }))
    }

    pub fn left(&self) -> &CosetSpace {
        &self.left
    }

    pub fn right(&self) -> &CosetSpace {
        &self.right
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }
}

fn pair_search(
    t1: &[Vec<usize>],
    t2: &[Vec<usize>],
    pairing: &mut [usize],
    used: &mut [bool],
    next: usize,
) -> bool {
    let q = pairing.len();
    if next == q {
        return true;
    }
    for cand in 0..q {
        if used[cand] {
            continue;
        }
        pairing[next] = cand;
        used[cand] = true;
        let consistent = (0..=next).all(|i| {
            let a = t1[i][next];
            let b = t1[next][i];
            (a > next || t2[pairing[i]][cand] == pairing[a])
                && (b > next || t2[cand][pairing[i]] == pairing[b])
        });
        if consistent && pair_search(t1, t2, pairing, used, next + 1) {
            return true;
        }
        pairing[next] = usize::MAX;
        used[cand] = false;
    }
    false
}

/// The subdirect sum `G1[H1] ⊕_φ G2[H2]`: all `(g, h)` with
/// `φ(H1 g) = H2 h`, acting on the disjoint union.
pub fn subdirect_sum(phi: &QuotientIso) -> Result<PermGroup> {
    let g1 = phi.left.parent();
    let g2 = phi.right.parent();
    let degree = g1.degree() + g2.degree();
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_DEGREE,
        });
    }
    let order = g1.order() * phi.right.subgroup().order();
    if order > DEFAULT_ELEMENT_CAP {
        return Err(Error::GroupTooLarge {
            cap: DEFAULT_ELEMENT_CAP,
        });
    }
    let mut elems = Vec::with_capacity(order);
    for (i, a) in g1.elements().iter().enumerate() {
        let want = phi.pairing[phi.left.coset_of[i]];
        for (j, b) in g2.elements().iter().enumerate() {
            if phi.right.coset_of[j] == want {
                elems.push(combine_blocks(a, b));
            }
        }
    }
    debug_assert_eq!(elems.len(), order);
    PermGroup::from_elements(degree, elems)
}

/// A nonpermutation automorphism of the natural S6: it maps the
/// transposition class to the class of triple transpositions, so it cannot
/// come from relabeling points.
pub fn outer_automorphism_s6() -> Result<GroupIsomorphism> {
    let s6 = symmetric_natural(6)?;
    let gens = vec![
        Permutation::from_cycles(6, &[vec![0, 1]])?,
        Permutation::from_cycles(6, &[(0..6).collect()])?,
    ];
    let triple_transpositions: Vec<Permutation> = s6
        .elements()
        .iter()
        .filter(|e| e.cycle_type() == vec![2, 2, 2])
        .cloned()
        .collect();
    let order_six: Vec<Permutation> = s6
        .elements()
        .iter()
        .filter(|e| e.order() == 6)
        .cloned()
        .collect();
    search_isomorphism_with_candidates(&s6, &s6, &gens, &[triple_transpositions, order_six])
        .ok_or_else(|| Error::Invalid("outer automorphism search failed".into()))
}

// ---------------------------------------------------------------------------
// Named groups
// ---------------------------------------------------------------------------

/// Transitive action of S4 on the six cosets of its cyclic subgroup of
/// order 4.
pub fn s4_6c() -> Result<PermGroup> {
    let s4 = symmetric_natural(4)?;
    let c4 = PermGroup::generate(4, vec![Permutation::from_cycles(4, &[vec![0, 1, 2, 3]])?])?;
    let (image, kernel) = coset_action(&s4, &c4)?;
    debug_assert_eq!(kernel.order(), 1);
    Ok(image)
}

/// Transitive action of S4 on the six cosets of its non-normal Klein
/// subgroup generated by two disjoint transpositions.
pub fn s4_6d() -> Result<PermGroup> {
    let s4 = symmetric_natural(4)?;
    let v = PermGroup::generate(
        4,
        vec![
            Permutation::from_cycles(4, &[vec![0, 1]])?,
            Permutation::from_cycles(4, &[vec![2, 3]])?,
        ],
    )?;
    let (image, kernel) = coset_action(&s4, &v)?;
    debug_assert_eq!(kernel.order(), 1);
    Ok(image)
}

/// The normal Klein subgroup of the natural S4.
pub fn klein_normal() -> Result<PermGroup> {
    PermGroup::from_elements(
        4,
        vec![
            Permutation::identity(4),
            Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?,
            Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]])?,
            Permutation::from_cycles(4, &[vec![0, 3], vec![1, 2]])?,
        ],
    )
}

const F5_INV: [usize; 5] = [0, 1, 3, 2, 4];
const PROJECTIVE_INFINITY: usize = 5;

fn mobius_map(a: usize, b: usize, c: usize, d: usize) -> Permutation {
    let eval = |x: usize| -> usize {
        if x == PROJECTIVE_INFINITY {
            if c == 0 {
                PROJECTIVE_INFINITY
            } else {
                a * F5_INV[c] % 5
            }
        } else {
            let num = (a * x + b) % 5;
            let den = (c * x + d) % 5;
            if den == 0 {
                PROJECTIVE_INFINITY
            } else {
                num * F5_INV[den] % 5
            }
        }
    };
    Permutation::from_images((0..6).map(eval).collect()).expect("Möbius map is a bijection")
}

/// `PGL(2,5)` acting on the projective line over the five-element field,
/// with point order `0, 1, 2, 3, 4, ∞`.
pub fn pgl_2_5() -> Result<PermGroup> {
    let mut elems = Vec::new();
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                for d in 0..5 {
                    if (a * d + 4 * b * c) % 5 != 0 {
                        elems.push(mobius_map(a, b, c, d));
                    }
                }
            }
        }
    }
    let g = PermGroup::from_elements(6, elems)?;
    debug_assert_eq!(g.order(), 120);
    Ok(g)
}

/// `PSL(2,5)`: the Möbius maps of square determinant.
pub fn psl_2_5() -> Result<PermGroup> {
    let mut elems = Vec::new();
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                for d in 0..5 {
                    let det = (a * d + 4 * b * c) % 5;
                    if det == 1 || det == 4 {
                        elems.push(mobius_map(a, b, c, d));
                    }
                }
            }
        }
    }
    let g = PermGroup::from_elements(6, elems)?;
    debug_assert_eq!(g.order(), 60);
    Ok(g)
}

/// The ten partitions of a six-element set into two 3-subsets, indexed by
/// the lex-sorted 3-subsets containing the least point.
fn partitions_into_two_triples() -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 1..6 {
        for b in (a + 1)..6 {
            out.push([0, a, b]);
        }
    }
    out
}

/// The exceptional transitive action of S6 on the 10 partitions of its six
/// points into two 3-subsets.
pub fn s6_on_10() -> Result<PermGroup> {
    let parts = partitions_into_two_triples();
    let act = |g: &Permutation| -> Permutation {
        let images: Vec<usize> = parts
            .iter()
            .map(|p| {
                let mut img: Vec<usize> = p.iter().map(|&x| g.apply(x)).collect();
                img.sort_unstable();
                let canonical: [usize; 3] = if img[0] == 0 {
                    [img[0], img[1], img[2]]
                } else {
                    let mut comp: Vec<usize> = (0..6).filter(|x| !img.contains(x)).collect();
                    comp.sort_unstable();
                    [comp[0], comp[1], comp[2]]
                };
                parts.iter().position(|q| *q == canonical).expect("partition")
            })
            .collect();
        Permutation::from_images(images).expect("induced bijection")
    };
    let s6 = symmetric_natural(6)?;
    let gens: Vec<Permutation> = s6.generators().iter().map(|g| act(g)).collect();
    let g = PermGroup::generate(10, gens)?;
    debug_assert_eq!(g.order(), 720);
    Ok(g)
}

/// The action of `S_n` on the `2n` cosets of `A_{n-1}`.
pub fn sn_on_2n(n: usize) -> Result<PermGroup> {
    if n < 3 || n > 8 {
        return Err(Error::Invalid(format!("supported range is 3..=8, got {n}")));
    }
    let sn = symmetric_natural(n)?;
    // A_{n-1}: even permutations fixing the last point.
    let sub = PermGroup::from_elements(
        n,
        sn.elements()
            .iter()
            .filter(|e| e.apply(n - 1) == n - 1 && e.is_even())
            .cloned()
            .collect(),
    )?;
    let (image, kernel) = coset_action(&sn, &sub)?;
    debug_assert_eq!(kernel.order(), 1);
    Ok(image)
}

pub fn petersen_aut() -> Result<PermGroup> {
    crate::graphs::petersen().automorphism_group()
}

/// Resolves a builder name such as `s4-6c`, `pgl25`, `sn-2n:5`, `sym:4`.
pub fn named_group(name: &str) -> Result<PermGroup> {
    if let Some(rest) = name.strip_prefix("sn-2n:") {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::UnknownName(name.to_string()))?;
        return sn_on_2n(n);
    }
    if let Some(rest) = name.strip_prefix("sym:") {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::UnknownName(name.to_string()))?;
        return symmetric_natural(n);
    }
    if let Some(rest) = name.strip_prefix("alt:") {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::UnknownName(name.to_string()))?;
        return alternating_natural(n);
    }
    if let Some(rest) = name.strip_prefix("cyclic:") {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::UnknownName(name.to_string()))?;
        return cyclic_natural(n);
    }
    match name {
        "s4-6c" => s4_6c(),
        "s4-6d" => s4_6d(),
        "pgl25" => pgl_2_5(),
        "psl25" => psl_2_5(),
        "s6-10" => s6_on_10(),
        "petersen-aut" => petersen_aut(),
        "s6-psi-s6" => parallel_sum_via(&outer_automorphism_s6()?),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

// ---------------------------------------------------------------------------
// Canonical actions by orbit profile
// ---------------------------------------------------------------------------

/// The canonical faithful `S_n` action with `k` orbits of size `n`
/// (natural), `r` orbits of size `2n` (cosets of `A_{n-1}`, realized as two
/// half-copies exchanged by odd elements), `s` orbits of size 2 (sign
/// action) and `t` fixed points, in that point order.
#[derive(Clone, Debug)]
pub struct CanonicalAction {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    group: PermGroup,
}

impl CanonicalAction {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.k * self.n + 2 * self.r * self.n + 2 * self.s + self.t
    }

    /// Point `i` of the `j`-th size-`n` orbit.
    pub fn natural_point(&self, j: usize, i: usize) -> usize {
        j * self.n + i
    }

    /// Point `(i, half)` of the `j`-th size-`2n` orbit; odd elements swap the
    /// two halves.
    pub fn double_point(&self, j: usize, i: usize, half: usize) -> usize {
        self.k * self.n + j * 2 * self.n + half * self.n + i
    }

    /// Point `which` of the `j`-th size-2 orbit.
    pub fn pair_point(&self, j: usize, which: usize) -> usize {
        self.k * self.n + 2 * self.r * self.n + 2 * j + which
    }

    pub fn fixed_point(&self, j: usize) -> usize {
        self.k * self.n + 2 * self.r * self.n + 2 * self.s + j
    }
}

pub fn canonical_action(n: usize, k: usize, r: usize, s: usize, t: usize) -> Result<CanonicalAction> {
    if n < 3 || n > 8 {
        return Err(Error::Invalid(format!("supported range is 3..=8, got n={n}")));
    }
    if k + r == 0 {
        return Err(Error::Invalid(
            "a faithful profile needs at least one orbit of size n or 2n".into(),
        ));
    }
    let shell = CanonicalAction {
        n,
        k,
        r,
        s,
        t,
        group: PermGroup::trivial(1),
    };
    let degree = shell.degree();
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_DEGREE,
        });
    }
    let base_gens = [
        Permutation::from_cycles(n, &[vec![0, 1]])?,
        Permutation::from_cycles(n, &[(0..n).collect()])?,
    ];
    let mut gens = Vec::new();
    for sigma in &base_gens {
        let odd = !sigma.is_even();
        let mut images = vec![0usize; degree];
        for j in 0..k {
            for i in 0..n {
                images[shell.natural_point(j, i)] = shell.natural_point(j, sigma.apply(i));
            }
        }
        for j in 0..r {
            for i in 0..n {
                for half in 0..2 {
                    let new_half = if odd { 1 - half } else { half };
                    images[shell.double_point(j, i, half)] =
                        shell.double_point(j, sigma.apply(i), new_half);
                }
            }
        }
        for j in 0..s {
            for which in 0..2 {
                let new_which = if odd { 1 - which } else { which };
                images[shell.pair_point(j, which)] = shell.pair_point(j, new_which);
            }
        }
        for j in 0..t {
            images[shell.fixed_point(j)] = shell.fixed_point(j);
        }
        gens.push(Permutation::from_images(images)?);
    }
    let group = PermGroup::generate(degree, gens)?;
    debug_assert_eq!(group.order(), (1..=n).product::<usize>());
    Ok(CanonicalAction {
        n,
        k,
        r,
        s,
        t,
        group,
    })
}

// ---------------------------------------------------------------------------
// Exceptional rows
// ---------------------------------------------------------------------------

/// The exceptional groups with distinguishing number greater than 2, keyed
/// the way they are usually listed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Table1Row {
    S4_6c,
    S4_6d,
    S4K4S3,
    Pgl25,
    Pgl25PslS2,
    PetersenAut,
    S6On10S2,
    S6PsiS6S2,
}

impl Table1Row {
    pub const ALL: [Table1Row; 8] = [
        Table1Row::S4_6c,
        Table1Row::S4_6d,
        Table1Row::S4K4S3,
        Table1Row::Pgl25,
        Table1Row::Pgl25PslS2,
        Table1Row::PetersenAut,
        Table1Row::S6On10S2,
        Table1Row::S6PsiS6S2,
    ];

    pub fn expected_d(self) -> u32 {
        match self {
            Table1Row::Pgl25 => 4,
            _ => 3,
        }
    }

    pub fn n(self) -> usize {
        match self {
            Table1Row::S4_6c | Table1Row::S4_6d | Table1Row::S4K4S3 => 4,
            Table1Row::Pgl25 | Table1Row::Pgl25PslS2 | Table1Row::PetersenAut => 5,
            Table1Row::S6On10S2 | Table1Row::S6PsiS6S2 => 6,
        }
    }

    /// Whether the row takes an `s` parameter, and its minimum value.
    pub fn s_range(self) -> (usize, usize) {
        match self {
            Table1Row::Pgl25PslS2 => (1, usize::MAX),
            Table1Row::S6On10S2 | Table1Row::S6PsiS6S2 => (0, usize::MAX),
            _ => (0, 0),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Table1Row::S4_6c => "S4(6c)",
            Table1Row::S4_6d => "S4(6d)",
            Table1Row::S4K4S3 => "S4[K4]+S3",
            Table1Row::Pgl25 => "PGL(2,5)",
            Table1Row::Pgl25PslS2 => "PGL(2,5)[PSL(2,5)]+S2^s",
            Table1Row::PetersenAut => "Aut(Petersen)",
            Table1Row::S6On10S2 => "(S6,10)[(A6,10)]+S2^s",
            Table1Row::S6PsiS6S2 => "(S6+psi S6)[A6+psi A6]+S2^s",
        }
    }
}

/// Glues `g` to the parallel multiple `S_2^(s)` over its unique index-2
/// subgroup (generated by squares), then appends `t` fixed points.
fn glue_sign_copies(g: &PermGroup, s: usize, t: usize) -> Result<PermGroup> {
    let base = if s == 0 {
        g.clone()
    } else {
        let h1 = g.squares_subgroup();
        let s2s = parallel_power(&symmetric_natural(2)?, s)?;
        let h2 = PermGroup::trivial(s2s.degree());
        let phi = QuotientIso::find(g, h1.group(), &s2s, &h2)?
            .ok_or_else(|| Error::InvalidPairing("no index-2 quotient pairing".into()))?;
        subdirect_sum(&phi)?
    };
    with_fixed_points(&base, t)
}

/// Builds one exceptional row with the given `s` (sign copies) and `t`
/// (fixed points) parameters.
pub fn table1_group(row: Table1Row, s: usize, t: usize) -> Result<PermGroup> {
    let (s_min, s_max) = row.s_range();
    if s < s_min || s > s_max {
        return Err(Error::Invalid(format!(
            "row {} does not admit s = {s}",
            row.label()
        )));
    }
    match row {
        Table1Row::S4_6c => with_fixed_points(&s4_6c()?, t),
        Table1Row::S4_6d => with_fixed_points(&s4_6d()?, t),
        Table1Row::S4K4S3 => {
            let s4 = symmetric_natural(4)?;
            let k4 = klein_normal()?;
            let s3 = symmetric_natural(3)?;
            let phi = QuotientIso::find(&s4, &k4, &s3, &PermGroup::trivial(3))?
                .ok_or_else(|| Error::InvalidPairing("S4/K4 is not S3".into()))?;
            with_fixed_points(&subdirect_sum(&phi)?, t)
        }
        Table1Row::Pgl25 => with_fixed_points(&pgl_2_5()?, t),
        Table1Row::Pgl25PslS2 => glue_sign_copies(&pgl_2_5()?, s, t),
        Table1Row::PetersenAut => with_fixed_points(&petersen_aut()?, t),
        Table1Row::S6On10S2 => glue_sign_copies(&s6_on_10()?, s, t),
        Table1Row::S6PsiS6S2 => {
            let psi = outer_automorphism_s6()?;
            glue_sign_copies(&parallel_sum_via(&psi)?, s, t)
        }
    }
}

// ---------------------------------------------------------------------------
// Structure round trip
// ---------------------------------------------------------------------------

/// A subdirect-sum decomposition of an intransitive group over a split of
/// its point set into two invariant blocks.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub quotient: QuotientIso,
    pub block1: Vec<usize>,
    pub block2: Vec<usize>,
    degree: usize,
}

/// Splits `g` over the invariant block `block1` into constituents `G1, G2`
/// with kernels `H1, H2` and the induced factor-group pairing.
pub fn decompose(g: &PermGroup, block1: &[usize]) -> Result<Decomposition> {
    let mut block1 = block1.to_vec();
    block1.sort_unstable();
    block1.dedup();
    if !g.is_invariant(&block1) {
        return Err(Error::NotInvariant);
    }
    let mask: Vec<bool> = {
        let mut m = vec![false; g.degree()];
        for &x in &block1 {
            m[x] = true;
        }
        m
    };
    let block2: Vec<usize> = (0..g.degree()).filter(|&x| !mask[x]).collect();
    if block1.is_empty() || block2.is_empty() {
        return Err(Error::Invalid("both blocks must be nonempty".into()));
    }
    let g1 = g.restrict_to(&block1)?;
    let g2 = g.restrict_to(&block2)?;
    let h1 = g.kernel_on_subset(&block2)?.group().restrict_to(&block1)?;
    let h2 = g.kernel_on_subset(&block1)?.group().restrict_to(&block2)?;
    let left = CosetSpace::new(&g1, &h1)?;
    let right = CosetSpace::new(&g2, &h2)?;
    let restrict = |e: &Permutation, block: &[usize]| -> Permutation {
        let mut pos = vec![usize::MAX; g.degree()];
        for (i, &x) in block.iter().enumerate() {
            pos[x] = i;
        }
        Permutation::from_images(block.iter().map(|&x| pos[e.apply(x)]).collect())
            .expect("restriction of a bijection")
    };
    let mut pairing = vec![usize::MAX; left.index()];
    for e in g.elements() {
        let c1 = left
            .coset_index(&restrict(e, &block1))
            .expect("constituent element");
        if pairing[c1] == usize::MAX {
            pairing[c1] = right
                .coset_index(&restrict(e, &block2))
                .expect("constituent element");
        }
    }
    let quotient = QuotientIso::new(&g1, &h1, &g2, &h2, pairing)?;
    Ok(Decomposition {
        quotient,
        block1,
        block2,
        degree: g.degree(),
    })
}

/// Rebuilds the group from a decomposition, on the original point labels.
pub fn reassemble(d: &Decomposition) -> Result<PermGroup> {
    let packed = subdirect_sum(&d.quotient)?;
    let orig_of: Vec<usize> = d.block1.iter().chain(d.block2.iter()).copied().collect();
    let elems = packed
        .elements()
        .iter()
        .map(|e| {
            let mut images = vec![0usize; d.degree];
            for (i, &oi) in orig_of.iter().enumerate() {
                images[oi] = orig_of[e.apply(i)];
            }
            Permutation::from_images(images).expect("relabeled bijection")
        })
        .collect();
    PermGroup::from_elements(d.degree, elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_groups() {
        assert_eq!(symmetric_natural(4).unwrap().order(), 24);
        assert!(symmetric_natural(4).unwrap().is_transitive());
        let a4 = alternating_natural(4).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(a4.contains(&Permutation::parse("(1 2 3)", 4).unwrap()));
        assert!(!a4.contains(&Permutation::parse("(1 2)", 4).unwrap()));
        let a3 = alternating_natural(3).unwrap();
        assert_eq!(a3.order(), 3);
    }

    #[test]
    fn coset_action_examples() {
        let s4 = symmetric_natural(4).unwrap();
        let a4 = alternating_natural(4).unwrap();
        let (img, ker) = coset_action(&s4, &a4).unwrap();
        assert_eq!(img.degree(), 2);
        assert_eq!(img.order(), 2);
        assert_eq!(ker.order(), 12);

        let s5 = symmetric_natural(5).unwrap();
        let a4_in_s5 = PermGroup::from_elements(
            5,
            s5.elements()
                .iter()
                .filter(|e| e.apply(4) == 4 && e.is_even())
                .cloned()
                .collect(),
        )
        .unwrap();
        let (img, ker) = coset_action(&s5, &a4_in_s5).unwrap();
        assert_eq!(img.degree(), 10);
        assert_eq!(img.order(), 120);
        assert!(img.is_transitive());
        assert_eq!(ker.order(), 1);

        let (img, ker) = coset_action(&s4, &klein_normal().unwrap()).unwrap();
        assert_eq!(img.degree(), 6);
        assert_eq!(img.order(), 6);
        assert_eq!(ker.order(), 4);
    }

    #[test]
    fn direct_sum_examples() {
        let s3 = symmetric_natural(3).unwrap();
        let s2 = symmetric_natural(2).unwrap();
        let g = direct_sum(&s3, &s2).unwrap();
        assert_eq!(g.degree(), 5);
        assert_eq!(g.order(), 12);

        let ext = with_fixed_points(&s3, 3).unwrap();
        assert_eq!(ext.order(), 6);
        assert_eq!(ext.orbit_sizes(), vec![1, 1, 1, 3]);

        let twos = direct_sum(&s2, &s2).unwrap();
        assert_eq!(twos.order(), 4);
        assert_eq!(twos.orbit_sizes(), vec![2, 2]);
    }

    #[test]
    fn parallel_power_examples() {
        let c3 = cyclic_natural(3).unwrap();
        let p = parallel_power(&c3, 3).unwrap();
        assert_eq!(p.order(), 3);
        assert!(p.contains(
            &Permutation::parse("(1 2 3)(4 5 6)(7 8 9)", 9).unwrap()
        ));
        let g = symmetric_natural(4).unwrap();
        assert_eq!(parallel_power(&g, 1).unwrap().elements(), g.elements());
        let s6 = symmetric_natural(6).unwrap();
        let p2 = parallel_power(&s6, 2).unwrap();
        assert_eq!(p2.degree(), 12);
        assert_eq!(p2.order(), 720);
    }

    #[test]
    fn parallel_sum_of_s3_with_itself() {
        let s3 = symmetric_natural(3).unwrap();
        let h = PermGroup::trivial(3);
        let phi = QuotientIso::find(&s3, &h, &s3, &h).unwrap().unwrap();
        let g = subdirect_sum(&phi).unwrap();
        assert_eq!(g.degree(), 6);
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn subdirect_sum_s4_a4_s2() {
        let s4 = symmetric_natural(4).unwrap();
        let a4 = alternating_natural(4).unwrap();
        let s2 = symmetric_natural(2).unwrap();
        let phi = QuotientIso::find(&s4, &a4, &s2, &PermGroup::trivial(2))
            .unwrap()
            .unwrap();
        let g = subdirect_sum(&phi).unwrap();
        assert_eq!(g.degree(), 6);
        assert_eq!(g.order(), 24);
        assert_eq!(g.orbit_sizes(), vec![2, 4]);
        // Sign is matched: every element odd on the first block swaps the pair.
        for e in g.elements() {
            let first = Permutation::from_images(e.images()[..4].to_vec()).unwrap();
            assert_eq!(first.is_even(), e.apply(4) == 4);
        }
    }

    #[test]
    fn subdirect_sum_s4_k4_s3() {
        let g = table1_group(Table1Row::S4K4S3, 0, 0).unwrap();
        assert_eq!(g.degree(), 7);
        assert_eq!(g.order(), 24);
        assert_eq!(g.orbit_sizes(), vec![3, 4]);
        // Kernel on the S_3 orbit is the Klein group acting on the 4-orbit.
        let ker = g.kernel_on_subset(&[4, 5, 6]).unwrap();
        assert_eq!(ker.order(), 4);
    }

    #[test]
    fn invalid_pairing_rejected() {
        let s4 = symmetric_natural(4).unwrap();
        let a4 = alternating_natural(4).unwrap();
        let s2 = symmetric_natural(2).unwrap();
        // Swapped pairing maps the identity coset to the swap coset; not
        // multiplicative.
        let err = QuotientIso::new(&s4, &a4, &s2, &PermGroup::trivial(2), vec![1, 0]).unwrap_err();
        assert!(matches!(err, Error::InvalidPairing(_)));
        // Non-normal subgroup rejected.
        let v = PermGroup::generate(
            4,
            vec![
                Permutation::parse("(1 2)", 4).unwrap(),
                Permutation::parse("(3 4)", 4).unwrap(),
            ],
        )
        .unwrap();
        let s3_reg = coset_action(&symmetric_natural(3).unwrap(), &PermGroup::trivial(3))
            .unwrap()
            .0;
        assert!(QuotientIso::find(&s4, &v, &s3_reg, &PermGroup::trivial(6)).is_err());
    }

    #[test]
    fn outer_automorphism_changes_cycle_type() {
        let psi = outer_automorphism_s6().unwrap();
        let t = Permutation::parse("(1 2)", 6).unwrap();
        let image = psi.apply(&t).unwrap();
        assert_eq!(image.cycle_type(), vec![2, 2, 2]);
        // Applying psi twice returns to the transposition class.
        let twice = psi.apply(image).unwrap();
        assert_eq!(twice.cycle_type(), vec![2]);
        // Homomorphism law on generators.
        for a in psi.source().generators() {
            for b in psi.source().generators() {
                assert_eq!(
                    psi.apply(&a.then(b)).unwrap().clone(),
                    psi.apply(a).unwrap().then(psi.apply(b).unwrap())
                );
            }
        }
    }

    #[test]
    fn named_group_examples() {
        let c = s4_6c().unwrap();
        assert_eq!((c.degree(), c.order()), (6, 24));
        assert!(c.is_transitive());
        let d = s4_6d().unwrap();
        assert_eq!((d.degree(), d.order()), (6, 24));
        assert!(d.is_transitive());
        assert_ne!(c.elements(), d.elements());

        let pgl = pgl_2_5().unwrap();
        assert_eq!((pgl.degree(), pgl.order()), (6, 120));
        assert!(pgl.is_transitive());
        assert_eq!(psl_2_5().unwrap().order(), 60);

        let tens = s6_on_10().unwrap();
        assert_eq!((tens.degree(), tens.order()), (10, 720));
        assert!(tens.is_transitive());

        let twon = sn_on_2n(5).unwrap();
        assert_eq!((twon.degree(), twon.order()), (10, 120));
        assert!(twon.is_transitive());

        assert!(named_group("no-such").is_err());
    }

    #[test]
    fn pgl25_is_sharply_3_transitive() {
        let pgl = pgl_2_5().unwrap();
        // Stabilizer chain sizes 120 -> 20 -> 4 -> 1 confirm 3-transitivity.
        let s1 = pgl.point_stabilizer(0);
        assert_eq!(s1.order(), 20);
        let s2 = s1.group().point_stabilizer(1);
        assert_eq!(s2.order(), 4);
        let s3 = s2.group().point_stabilizer(2);
        assert_eq!(s3.order(), 1);
    }

    #[test]
    fn canonical_action_layouts() {
        let act = canonical_action(5, 2, 0, 0, 0).unwrap();
        assert_eq!(act.group().degree(), 10);
        assert_eq!(act.group().order(), 120);
        assert_eq!(act.group().orbit_sizes(), vec![5, 5]);

        let act = canonical_action(4, 1, 1, 1, 1).unwrap();
        assert_eq!(act.group().degree(), 15);
        assert_eq!(act.group().order(), 24);
        assert_eq!(act.group().orbit_sizes(), vec![1, 2, 4, 8]);

        let act = canonical_action(6, 0, 1, 0, 0).unwrap();
        assert_eq!(act.group().degree(), 12);
        assert_eq!(act.group().order(), 720);
        assert!(act.group().is_transitive());
    }

    #[test]
    fn decompose_reassemble_round_trip() {
        let g = table1_group(Table1Row::S4K4S3, 0, 0).unwrap();
        let d = decompose(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(reassemble(&d).unwrap().elements(), g.elements());

        let act = canonical_action(4, 1, 0, 1, 0).unwrap();
        let d = decompose(act.group(), &[0, 1, 2, 3]).unwrap();
        assert_eq!(
            reassemble(&d).unwrap().elements(),
            act.group().elements()
        );
    }

    #[test]
    fn subdirect_order_law() {
        let s4 = symmetric_natural(4).unwrap();
        let a4 = alternating_natural(4).unwrap();
        let s2 = symmetric_natural(2).unwrap();
        let phi = QuotientIso::find(&s4, &a4, &s2, &PermGroup::trivial(2))
            .unwrap()
            .unwrap();
        let g = subdirect_sum(&phi).unwrap();
        assert_eq!(
            g.order(),
            phi.left().parent().order() * phi.right().subgroup().order()
        );
        assert_eq!(
            g.order(),
            phi.right().parent().order() * phi.left().subgroup().order()
        );
    }
}
