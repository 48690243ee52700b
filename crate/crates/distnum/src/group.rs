//! Finite permutation groups stored by full element enumeration.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default limit on the number of elements a closure may reach.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;
/// Largest supported degree.
pub const MAX_DEGREE: usize = 64;

/// A permutation group given by a degree, a generator list and the fully
/// enumerated element set, kept sorted by image sequence so iteration order
/// and witnesses are deterministic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: vec![Permutation::identity(degree)],
        }
    }

    /// Closure of the generators, with the default element cap.
    pub fn generate(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::generate_with_cap(degree, gens, DEFAULT_ELEMENT_CAP)
    }

    pub fn generate_with_cap(degree: usize, gens: Vec<Permutation>, cap: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree,
                max: MAX_DEGREE,
            });
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let elements = closure(degree, &gens, cap)?;
        Ok(PermGroup {
            degree,
            generators: gens,
            elements,
        })
    }

    /// Builds a group from an explicit element set, verifying closure by
    /// regenerating from a greedily chosen generating subset.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree,
                max: MAX_DEGREE,
            });
        }
        let mut elements = elements;
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            return Err(Error::NotAGroup);
        }
        for e in &elements {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: e.degree(),
                });
            }
        }
        let generators = greedy_generators(degree, &elements)?;
        let regenerated = closure(degree, &generators, elements.len())?;
        if regenerated != elements {
            return Err(Error::NotAGroup);
        }
        Ok(PermGroup {
            degree,
            generators,
            elements,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Orbit partition, each block sorted, blocks ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut frontier = vec![start];
            while let Some(x) = frontier.pop() {
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                        frontier.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.orbits().iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        sizes
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree)
            .filter(|&x| self.generators.iter().all(|g| g.apply(x) == x))
            .collect()
    }

    pub fn point_stabilizer(&self, x: usize) -> Subgroup {
        let elems = self
            .elements
            .iter()
            .filter(|g| g.apply(x) == x)
            .cloned()
            .collect();
        Subgroup::new_unchecked(self.clone(), elems)
    }

    /// `{g : Sg = S}` for a point set `S`.
    pub fn setwise_stabilizer(&self, set: &[usize]) -> Subgroup {
        let mut mask = vec![false; self.degree];
        for &x in set {
            mask[x] = true;
        }
        let elems = self
            .elements
            .iter()
            .filter(|g| set.iter().all(|&x| mask[g.apply(x)]))
            .cloned()
            .collect();
        Subgroup::new_unchecked(self.clone(), elems)
    }

    /// Subgroup fixing every point of `set`; `set` must be a union of orbits.
    pub fn kernel_on_subset(&self, set: &[usize]) -> Result<Subgroup> {
        if !self.is_invariant(set) {
            return Err(Error::NotInvariant);
        }
        let elems = self
            .elements
            .iter()
            .filter(|g| set.iter().all(|&x| g.apply(x) == x))
            .cloned()
            .collect();
        Ok(Subgroup::new_unchecked(self.clone(), elems))
    }

    pub fn is_invariant(&self, set: &[usize]) -> bool {
        let mut mask = vec![false; self.degree];
        for &x in set {
            mask[x] = true;
        }
        set.iter()
            .all(|&x| self.generators.iter().all(|g| mask[g.apply(x)]))
    }

    /// The constituent: restriction to an invariant block, points renumbered
    /// by their position in the sorted block.
    pub fn restrict_to(&self, block: &[usize]) -> Result<PermGroup> {
        if !self.is_invariant(block) {
            return Err(Error::NotInvariant);
        }
        let mut block = block.to_vec();
        block.sort_unstable();
        block.dedup();
        let mut pos = vec![usize::MAX; self.degree];
        for (i, &x) in block.iter().enumerate() {
            pos[x] = i;
        }
        let mut restricted: Vec<Permutation> = self
            .elements
            .iter()
            .map(|g| {
                Permutation::from_images(block.iter().map(|&x| pos[g.apply(x)]).collect())
                    .expect("restriction of a bijection is a bijection")
            })
            .collect();
        restricted.sort_unstable();
        restricted.dedup();
        PermGroup::from_elements(block.len(), restricted)
    }

    /// The conjugate group `π⁻¹ G π`, i.e. `G` with points relabeled by `π`.
    pub fn conjugate_by(&self, relabel: &Permutation) -> Result<PermGroup> {
        if relabel.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: relabel.degree(),
            });
        }
        let inv = relabel.inverse();
        let elems = self
            .elements
            .iter()
            .map(|g| inv.then(g).then(relabel))
            .collect();
        PermGroup::from_elements(self.degree, elems)
    }

    /// Subgroup generated by all squares. For a group abstractly isomorphic
    /// to a symmetric group this is its alternating part.
    pub fn squares_subgroup(&self) -> Subgroup {
        let squares: Vec<Permutation> = self.elements.iter().map(|g| g.then(g)).collect();
        let elems = closure(self.degree, &squares, self.elements.len())
            .expect("closure of a subset stays within the group");
        Subgroup::new_unchecked(self.clone(), elems)
    }

    pub fn even_elements(&self) -> Vec<Permutation> {
        self.elements.iter().filter(|g| g.is_even()).cloned().collect()
    }

    /// Writes the group text format: a `degree m` line followed by one
    /// generator per line in 1-based cycle notation.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "degree {}", self.degree).unwrap();
        for g in &self.generators {
            writeln!(out, "{g}").unwrap();
        }
        out
    }

    /// Parses the group text format. `#` starts a comment line.
    pub fn parse_text(input: &str) -> Result<PermGroup> {
        let mut degree: Option<usize> = None;
        let mut gens = Vec::new();
        for (lineno, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match degree {
                None => {
                    let rest = line.strip_prefix("degree").ok_or(Error::Parse {
                        line: lineno + 1,
                        msg: "expected `degree m` as the first non-comment line".into(),
                    })?;
                    let m: usize = rest.trim().parse().map_err(|_| Error::Parse {
                        line: lineno + 1,
                        msg: format!("bad degree {rest:?}"),
                    })?;
                    degree = Some(m);
                }
                Some(m) => {
                    let p = Permutation::parse(line, m).map_err(|e| Error::Parse {
                        line: lineno + 1,
                        msg: e.to_string(),
                    })?;
                    gens.push(p);
                }
            }
        }
        let degree = degree.ok_or(Error::Parse {
            line: 0,
            msg: "missing `degree m` line".into(),
        })?;
        PermGroup::generate(degree, gens)
    }
}

/// A subgroup together with its parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: PermGroup,
    group: PermGroup,
}

impl Subgroup {
    pub fn new(parent: &PermGroup, elements: Vec<Permutation>) -> Result<Subgroup> {
        let group = PermGroup::from_elements(parent.degree(), elements)?;
        if !group.elements().iter().all(|g| parent.contains(g)) {
            return Err(Error::NotASubgroup);
        }
        Ok(Subgroup {
            parent: parent.clone(),
            group,
        })
    }

    pub fn from_group(parent: &PermGroup, group: PermGroup) -> Result<Subgroup> {
        if !group.elements().iter().all(|g| parent.contains(g)) {
            return Err(Error::NotASubgroup);
        }
        Ok(Subgroup {
            parent: parent.clone(),
            group,
        })
    }

    fn new_unchecked(parent: PermGroup, elements: Vec<Permutation>) -> Subgroup {
        let group = PermGroup::from_elements(parent.degree(), elements)
            .expect("filtered subset of a group is a subgroup");
        Subgroup { parent, group }
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.group.order()
    }

    pub fn is_normal(&self) -> bool {
        self.parent.elements().iter().all(|g| {
            let gi = g.inverse();
            self.group
                .elements()
                .iter()
                .all(|h| self.group.contains(&gi.then(h).then(g)))
        })
    }
}

fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut set: HashSet<Permutation> = HashSet::new();
    set.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(e) = frontier.pop() {
        for g in gens {
            let f = e.then(g);
            if !set.contains(&f) {
                if set.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                set.insert(f.clone());
                frontier.push(f);
            }
        }
    }
    let mut elements: Vec<Permutation> = set.into_iter().collect();
    elements.sort_unstable();
    Ok(elements)
}

fn greedy_generators(degree: usize, sorted_elements: &[Permutation]) -> Result<Vec<Permutation>> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut have: Vec<Permutation> = vec![Permutation::identity(degree)];
    for e in sorted_elements {
        if have.binary_search(e).is_err() {
            gens.push(e.clone());
            have = closure(degree, &gens, sorted_elements.len())?;
        }
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        PermGroup::generate(
            3,
            vec![
                Permutation::parse("(1 2)", 3).unwrap(),
                Permutation::parse("(1 2 3)", 3).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn generate_s3() {
        assert_eq!(s3().order(), 6);
    }

    #[test]
    fn empty_generating_set_is_trivial() {
        let g = PermGroup::generate(5, vec![]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn generate_s5() {
        let g = PermGroup::generate(
            5,
            vec![
                Permutation::parse("(1 2)", 5).unwrap(),
                Permutation::parse("(1 2 3 4 5)", 5).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g.order(), 120);
    }

    #[test]
    fn cap_is_enforced() {
        let err = PermGroup::generate_with_cap(
            5,
            vec![
                Permutation::parse("(1 2)", 5).unwrap(),
                Permutation::parse("(1 2 3 4 5)", 5).unwrap(),
            ],
            100,
        )
        .unwrap_err();
        assert!(matches!(err, Error::GroupTooLarge { cap: 100 }));
    }

    #[test]
    fn degree_mismatch_rejected() {
        let err =
            PermGroup::generate(3, vec![Permutation::parse("(1 2)(3 4)", 4).unwrap()]).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }

    #[test]
    fn orbits_transitive_and_trivial() {
        assert_eq!(s3().orbits(), vec![vec![0, 1, 2]]);
        let t = PermGroup::trivial(4);
        assert_eq!(t.orbits(), vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn setwise_stabilizer_examples() {
        let g = s3();
        let stab = g.setwise_stabilizer(&[0]);
        assert_eq!(stab.order(), 2);
        assert!(stab.group().contains(&Permutation::parse("(2 3)", 3).unwrap()));
        let all = g.setwise_stabilizer(&[0, 1, 2]);
        assert_eq!(all.order(), 6);
    }

    #[test]
    fn kernel_on_natural_action_is_trivial() {
        let s4 = PermGroup::generate(
            4,
            vec![
                Permutation::parse("(1 2)", 4).unwrap(),
                Permutation::parse("(1 2 3 4)", 4).unwrap(),
            ],
        )
        .unwrap();
        let k = s4.kernel_on_subset(&[0, 1, 2, 3]).unwrap();
        assert_eq!(k.order(), 1);
        assert!(s4.kernel_on_subset(&[0]).is_err());
    }

    #[test]
    fn orbit_stabilizer_relation() {
        let g = s3();
        for x in 0..3 {
            let orbit = g.orbits().into_iter().find(|o| o.contains(&x)).unwrap();
            assert_eq!(orbit.len() * g.point_stabilizer(x).order(), g.order());
        }
    }

    #[test]
    fn squares_subgroup_of_s3_is_a3() {
        let a = s3().squares_subgroup();
        assert_eq!(a.order(), 3);
        assert!(a.is_normal());
    }

    #[test]
    fn text_round_trip() {
        let g = s3();
        let t = g.to_text();
        let h = PermGroup::parse_text(&t).unwrap();
        assert_eq!(g.elements(), h.elements());
        let with_comment = "# a comment\ndegree 3\n(1 2)\n (1 2 3) \n";
        assert_eq!(PermGroup::parse_text(with_comment).unwrap().order(), 6);
    }
}
