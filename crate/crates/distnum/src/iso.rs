//! Abstract isomorphism search between enumerated groups, specialized for
//! recognizing copies of symmetric groups.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// An abstract group isomorphism, stored as one image per source element,
/// aligned with the source's sorted element order.
#[derive(Clone, Debug)]
pub struct GroupIsomorphism {
    source: PermGroup,
    target: PermGroup,
    images: Vec<Permutation>,
}

impl GroupIsomorphism {
    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn apply(&self, g: &Permutation) -> Option<&Permutation> {
        self.source.index_of(g).map(|i| &self.images[i])
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn inverse(&self) -> GroupIsomorphism {
        let mut pairs: Vec<(Permutation, Permutation)> = self
            .source
            .elements()
            .iter()
            .cloned()
            .zip(self.images.iter().cloned())
            .map(|(a, b)| (b, a))
            .collect();
        pairs.sort_unstable();
        GroupIsomorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            images: pairs.into_iter().map(|(_, v)| v).collect(),
        }
    }

    /// Full check of bijectivity and the homomorphism law over all pairs.
    pub fn verify(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let distinct: HashSet<&Permutation> = self.images.iter().collect();
        if distinct.len() != self.images.len() {
            return false;
        }
        if !self.images.iter().all(|p| self.target.contains(p)) {
            return false;
        }
        let src = self.source.elements();
        for a in src {
            let fa = self.apply(a).unwrap();
            for b in src {
                let fb = self.apply(b).unwrap();
                let fab = self.apply(&a.then(b)).unwrap();
                if &fa.then(fb) != fab {
                    return false;
                }
            }
        }
        true
    }
}

/// Spanning tree of the Cayley graph: for each element (by sorted index),
/// how to reach it from the identity by right-multiplying generators.
struct CayleyTree {
    /// (parent element index, generator index); `None` for the identity.
    parent: Vec<Option<(usize, usize)>>,
    /// Element indices in BFS order (identity first).
    order: Vec<usize>,
}

fn cayley_tree(g: &PermGroup, gens: &[Permutation]) -> CayleyTree {
    let n = g.order();
    let mut parent: Vec<Option<Option<(usize, usize)>>> = vec![None; n];
    let id_idx = g.index_of(&g.identity()).expect("identity in group");
    parent[id_idx] = Some(None);
    let mut order = vec![id_idx];
    let mut head = 0;
    while head < order.len() {
        let e_idx = order[head];
        head += 1;
        let e = &g.elements()[e_idx];
        for (gi, gen) in gens.iter().enumerate() {
            let f = e.then(gen);
            let f_idx = g.index_of(&f).expect("closure");
            if parent[f_idx].is_none() {
                parent[f_idx] = Some(Some((e_idx, gi)));
                order.push(f_idx);
            }
        }
    }
    assert_eq!(order.len(), n, "generators do not generate the group");
    CayleyTree {
        parent: parent.into_iter().map(|p| p.unwrap()).collect(),
        order,
    }
}

/// A small generating sequence, preferring a pair (max-order element plus a
/// completing partner) and falling back to a greedy chain.
pub fn small_generating_set(g: &PermGroup) -> Vec<Permutation> {
    if g.order() == 1 {
        return Vec::new();
    }
    let max_order = g.elements().iter().map(|e| e.order()).max().unwrap();
    let a = g
        .elements()
        .iter()
        .find(|e| e.order() == max_order)
        .unwrap()
        .clone();
    let gen_a = PermGroup::generate(g.degree(), vec![a.clone()]).unwrap();
    if gen_a.order() == g.order() {
        return vec![a];
    }
    let mut tried = 0;
    for b in g.elements() {
        if b.is_identity() || gen_a.contains(b) {
            continue;
        }
        tried += 1;
        if tried > 400 {
            break;
        }
        if let Ok(sub) = PermGroup::generate_with_cap(g.degree(), vec![a.clone(), b.clone()], g.order())
        {
            if sub.order() == g.order() {
                return vec![a, b.clone()];
            }
        }
    }
    // Greedy chain fallback.
    let mut gens = vec![a];
    let mut have = PermGroup::generate(g.degree(), gens.clone()).unwrap();
    for e in g.elements() {
        if !have.contains(e) {
            gens.push(e.clone());
            have = PermGroup::generate(g.degree(), gens.clone()).unwrap();
            if have.order() == g.order() {
                break;
            }
        }
    }
    gens
}

/// Multiset of element orders, used as a cheap abstract invariant.
fn order_profile(g: &PermGroup) -> HashMap<usize, usize> {
    let mut m = HashMap::new();
    for e in g.elements() {
        *m.entry(e.order()).or_insert(0) += 1;
    }
    m
}

/// Backtracking search for an isomorphism determined by generator images,
/// with explicit candidate sets per generator. Returns the first hit in
/// candidate order; `None` when no assignment extends to an isomorphism.
pub fn search_isomorphism_with_candidates(
    source: &PermGroup,
    target: &PermGroup,
    gens: &[Permutation],
    candidates: &[Vec<Permutation>],
) -> Option<GroupIsomorphism> {
    assert_eq!(gens.len(), candidates.len());
    if source.order() != target.order() {
        return None;
    }
    if gens.is_empty() {
        // Both groups are trivial.
        return Some(GroupIsomorphism {
            source: source.clone(),
            target: target.clone(),
            images: vec![target.identity()],
        });
    }
    let tree = cayley_tree(source, gens);
    let mut chosen: Vec<Permutation> = Vec::new();
    search_rec(source, target, gens, candidates, &tree, &mut chosen)
}

fn search_rec(
    source: &PermGroup,
    target: &PermGroup,
    gens: &[Permutation],
    candidates: &[Vec<Permutation>],
    tree: &CayleyTree,
    chosen: &mut Vec<Permutation>,
) -> Option<GroupIsomorphism> {
    let j = chosen.len();
    if j == gens.len() {
        return finish_isomorphism(source, target, gens, chosen, tree);
    }
    'cand: for c in &candidates[j] {
        if c.order() != gens[j].order() {
            continue;
        }
        // Relation spot checks against the already-fixed images.
        for i in 0..j {
            let gij = gens[i].then(&gens[j]);
            let cij = chosen[i].then(c);
            if gij.order() != cij.order() {
                continue 'cand;
            }
            if gens[i].then(&gij).order() != chosen[i].then(&cij).order() {
                continue 'cand;
            }
        }
        chosen.push(c.clone());
        if let Some(found) = search_rec(source, target, gens, candidates, tree, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

fn finish_isomorphism(
    source: &PermGroup,
    target: &PermGroup,
    gens: &[Permutation],
    gen_images: &[Permutation],
    tree: &CayleyTree,
) -> Option<GroupIsomorphism> {
    let n = source.order();
    let mut images: Vec<Option<Permutation>> = vec![None; n];
    for &idx in &tree.order {
        match tree.parent[idx] {
            None => images[idx] = Some(target.identity()),
            Some((p_idx, gi)) => {
                let img = images[p_idx].as_ref().unwrap().then(&gen_images[gi]);
                images[idx] = Some(img);
            }
        }
    }
    let images: Vec<Permutation> = images.into_iter().map(|x| x.unwrap()).collect();
    // Well-definedness: the tree-derived map must satisfy the homomorphism
    // law on every (element, generator) edge, and must be injective into the
    // target. Together with equal orders this gives a bijective isomorphism.
    let mut seen: HashSet<&Permutation> = HashSet::with_capacity(n);
    for img in &images {
        if !target.contains(img) || !seen.insert(img) {
            return None;
        }
    }
    for (e_idx, e) in source.elements().iter().enumerate() {
        for (gi, gen) in gens.iter().enumerate() {
            let f_idx = source.index_of(&e.then(gen)).expect("closure");
            if images[e_idx].then(&gen_images[gi]) != images[f_idx] {
                return None;
            }
        }
    }
    Some(GroupIsomorphism {
        source: source.clone(),
        target: target.clone(),
        images,
    })
}

/// Searches for an abstract isomorphism from `g` onto the natural symmetric
/// group `S_n`; `None` when no isomorphism exists. `n` must be at most 8.
pub fn find_isomorphism_to_symmetric(g: &PermGroup, n: usize) -> Result<Option<GroupIsomorphism>> {
    if n == 0 || n > 8 {
        return Err(Error::Invalid(format!(
            "symmetric-group recognition supports 1 <= n <= 8, got {n}"
        )));
    }
    let target = crate::constructions::symmetric_natural(n)?;
    if g.order() != target.order() {
        return Ok(None);
    }
    if order_profile(g) != order_profile(&target) {
        return Ok(None);
    }
    let gens = small_generating_set(g);
    let mut candidates = Vec::with_capacity(gens.len());
    for (i, gen) in gens.iter().enumerate() {
        let ord = gen.order();
        let matching: Vec<Permutation> = if i == 0 {
            // The whole symmetric group is available for post-composition by
            // conjugation, so the first image can be fixed to one lex-least
            // representative per cycle type.
            let mut reps: Vec<Permutation> = Vec::new();
            let mut seen_types: HashSet<Vec<usize>> = HashSet::new();
            for e in target.elements() {
                if e.order() == ord && seen_types.insert(e.cycle_type()) {
                    reps.push(e.clone());
                }
            }
            reps
        } else {
            target
                .elements()
                .iter()
                .filter(|e| e.order() == ord)
                .cloned()
                .collect()
        };
        candidates.push(matching);
    }
    Ok(search_isomorphism_with_candidates(g, &target, &gens, &candidates))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alternating_natural, symmetric_natural};

    #[test]
    fn s4_recognized() {
        let s4 = symmetric_natural(4).unwrap();
        let iso = find_isomorphism_to_symmetric(&s4, 4).unwrap().unwrap();
        assert!(iso.verify());
    }

    #[test]
    fn cyclic_6_is_not_s3() {
        let c6 = PermGroup::generate(6, vec![Permutation::parse("(1 2 3 4 5 6)", 6).unwrap()])
            .unwrap();
        assert!(find_isomorphism_to_symmetric(&c6, 3).unwrap().is_none());
    }

    #[test]
    fn a4_is_not_s3_sized_match() {
        // |A_4| = 12 != 6, quick order reject.
        let a4 = alternating_natural(4).unwrap();
        assert!(find_isomorphism_to_symmetric(&a4, 3).unwrap().is_none());
    }

    #[test]
    fn homomorphism_law_on_generators() {
        let s5 = symmetric_natural(5).unwrap();
        let iso = find_isomorphism_to_symmetric(&s5, 5).unwrap().unwrap();
        for a in s5.generators() {
            for b in s5.generators() {
                let lhs = iso.apply(&a.then(b)).unwrap().clone();
                let rhs = iso.apply(a).unwrap().then(iso.apply(b).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}
