//! Finite groups given by permutation generators, acting on `{0, .., n-1}`.
//!
//! A group element `α` acts on a point by `α·x = images[x]`. Products follow
//! function composition: `(αβ)·x = α·(β·x)`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// Default bound on the number of enumerated group elements.
pub const DEFAULT_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {i} out of range for {n} points"
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("image {i} repeated")));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Cycle `(c0 c1 .. ck)` on `n` points.
    pub fn cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for (pos, &c) in cycle.iter().enumerate() {
            if c >= n {
                return Err(Error::InvalidPermutation(format!(
                    "cycle entry {c} out of range for {n} points"
                )));
            }
            images[c] = cycle[(pos + 1) % cycle.len()];
        }
        Self::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// A finite group acting on `n_points` points, with all elements enumerated.
#[derive(Clone, Debug)]
pub struct GroupAction {
    n_points: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilizer {
    pub point: usize,
    /// Indices into [`GroupAction::elements`].
    pub members: Vec<usize>,
}

/// Breadth-first closure of `generators` under composition.
///
/// Element 0 is the identity. Each BFS layer is appended in lexicographic
/// order of image arrays, so the enumeration is fully deterministic.
pub fn enumerate_group(
    n_points: usize,
    generators: Vec<Permutation>,
    cap: usize,
) -> Result<GroupAction> {
    if n_points == 0 {
        return Err(Error::InvalidPermutation("action needs at least one point".into()));
    }
    for g in &generators {
        if g.len() != n_points {
            return Err(Error::InvalidPermutation(format!(
                "generator acts on {} points, expected {n_points}",
                g.len()
            )));
        }
    }
    let identity = Permutation::identity(n_points);
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut layer = BTreeSet::new();
        for &e in &frontier {
            for g in &generators {
                let p = g.compose(&elements[e]);
                if !index.contains_key(&p) {
                    layer.insert(p);
                }
            }
        }
        frontier.clear();
        for p in layer {
            if elements.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            index.insert(p.clone(), elements.len());
            frontier.push(elements.len());
            elements.push(p);
        }
    }
    Ok(GroupAction {
        n_points,
        generators,
        elements,
        index,
    })
}

impl GroupAction {
    pub fn n_points(&self) -> usize {
        self.n_points
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

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        orbits_under(self.n_points, &self.generators)
            .into_iter()
            .find(|o| o.contains(&x))
            .unwrap_or_default()
    }

    /// Some element mapping `from` to `to`, if one exists.
    pub fn transporter(&self, from: usize, to: usize) -> Option<&Permutation> {
        self.elements.iter().find(|a| a.apply(from) == to)
    }

    /// The group acting on its own elements by left translation.
    pub fn regular(&self, cap: usize) -> Result<GroupAction> {
        let order = self.order();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let images = self
                    .elements
                    .iter()
                    .map(|e| self.index[&g.compose(e)])
                    .collect();
                Permutation::new(images)
            })
            .collect::<Result<Vec<_>>>()?;
        enumerate_group(order, gens, cap)
    }
}

pub fn is_transitive(action: &GroupAction) -> bool {
    let mut seen = vec![false; action.n_points];
    for a in &action.elements {
        seen[a.apply(0)] = true;
    }
    seen.into_iter().all(|s| s)
}

pub fn stabilizer(action: &GroupAction, x: usize) -> Stabilizer {
    let members: Vec<usize> = action
        .elements
        .iter()
        .enumerate()
        .filter(|(_, a)| a.apply(x) == x)
        .map(|(i, _)| i)
        .collect();
    assert_eq!(
        members.len() * action.orbit(x).len(),
        action.order(),
        "orbit-stabilizer identity failed at point {x}"
    );
    Stabilizer { point: x, members }
}

/// Orbits of the group generated by `perms` on `{0, .., n-1}`, each sorted,
/// listed by smallest member.
pub fn orbits_under(n: usize, perms: &[Permutation]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start];
        label[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for p in perms {
                let y = p.apply(x);
                if label[y] == usize::MAX {
                    label[y] = id;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Orbits of `Stab(x)` on the points.
pub fn stabilizer_orbits(action: &GroupAction, x: usize) -> Vec<Vec<usize>> {
    let stab = stabilizer(action, x);
    let perms: Vec<Permutation> = stab
        .members
        .iter()
        .map(|&i| action.elements[i].clone())
        .collect();
    orbits_under(action.n_points, &perms)
}

/// Orbits on `X × X` under the diagonal action, without a transitivity check.
pub(crate) fn pair_orbits(action: &GroupAction) -> Vec<Vec<(usize, usize)>> {
    let n = action.n_points;
    let pair_perms: Vec<Permutation> = action
        .generators
        .iter()
        .map(|g| Permutation {
            images: (0..n * n)
                .map(|p| g.apply(p / n) * n + g.apply(p % n))
                .collect(),
        })
        .collect();
    orbits_under(n * n, &pair_perms)
        .into_iter()
        .map(|o| o.into_iter().map(|p| (p / n, p % n)).collect())
        .collect()
}

/// G-orbits on `X × X`, sorted by smallest row-major member. The first one
/// is always the diagonal.
pub fn orbitals(action: &GroupAction) -> Result<Vec<Vec<(usize, usize)>>> {
    if !is_transitive(action) {
        return Err(Error::NotTransitive);
    }
    Ok(pair_orbits(action))
}

pub fn cyclic(n: usize) -> Result<Vec<Permutation>> {
    check_size(n)?;
    Ok(vec![Permutation::new((0..n).map(|i| (i + 1) % n).collect())?])
}

/// Dihedral group of order `2n` on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> Result<Vec<Permutation>> {
    check_size(n)?;
    let rotation = Permutation::new((0..n).map(|i| (i + 1) % n).collect())?;
    let reflection = Permutation::new((0..n).map(|i| (n - i) % n).collect())?;
    Ok(vec![rotation, reflection])
}

pub fn symmetric(n: usize) -> Result<Vec<Permutation>> {
    check_size(n)?;
    if n == 1 {
        return Ok(vec![Permutation::identity(1)]);
    }
    let long: Vec<usize> = (0..n).collect();
    Ok(vec![Permutation::cycle(n, &[0, 1])?, Permutation::cycle(n, &long)?])
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("family size must be positive".into()))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn act(n: usize, gens: Vec<Permutation>) -> GroupAction {
        enumerate_group(n, gens, DEFAULT_CAP).unwrap()
    }

    /// Exhaustive multiplication table: every product of two elements is an
    /// element, and every element has its inverse in the list.
    fn closed(a: &GroupAction) -> bool {
        a.elements().iter().all(|x| {
            a.index_of(&x.inverse()).is_some()
                && a.elements().iter().all(|y| a.index_of(&x.compose(y)).is_some())
        })
    }

    #[test]
    fn identity_generator_gives_trivial_group() {
        let a = act(3, vec![Permutation::identity(3)]);
        assert_eq!(a.order(), 1);
        assert!(a.elements()[0].is_identity());
    }

    #[test]
    fn three_cycle_has_order_three() {
        let a = act(3, vec![Permutation::cycle(3, &[0, 1, 2]).unwrap()]);
        assert_eq!(a.order(), 3);
        assert!(closed(&a));
    }

    #[test]
    fn transposition_and_three_cycle_generate_s3() {
        let gens = vec![
            Permutation::cycle(3, &[0, 1]).unwrap(),
            Permutation::cycle(3, &[0, 1, 2]).unwrap(),
        ];
        let a = act(3, gens);
        assert_eq!(a.order(), 6);
        assert!(closed(&a));
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = act(4, symmetric(4).unwrap());
        let b = act(4, symmetric(4).unwrap());
        assert_eq!(a.elements(), b.elements());
        assert!(a.elements()[0].is_identity());
    }

    #[test]
    fn malformed_permutations_are_rejected() {
        assert!(matches!(
            Permutation::new(vec![0, 0, 1]),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(
            Permutation::new(vec![0, 3, 1]),
            Err(Error::InvalidPermutation(_))
        ));
        let err = enumerate_group(3, vec![Permutation::identity(2)], 10).unwrap_err();
        assert!(matches!(err, Error::InvalidPermutation(_)));
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_group(5, symmetric(5).unwrap(), 100).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 100 }));
        assert_eq!(enumerate_group(5, symmetric(5).unwrap(), 120).unwrap().order(), 120);
    }

    #[test]
    fn transitivity() {
        let c3 = act(3, cyclic(3).unwrap());
        assert!(is_transitive(&c3));
        let swap = act(3, vec![Permutation::cycle(3, &[0, 1]).unwrap()]);
        assert!(!is_transitive(&swap));
        let s3 = act(3, symmetric(3).unwrap());
        // orbit enumeration oracle
        let orbit: BTreeSet<usize> = s3.elements().iter().map(|a| a.apply(0)).collect();
        assert_eq!(orbit.len(), 3);
        assert!(is_transitive(&s3));
    }

    #[test]
    fn stabilizers() {
        let c4 = act(4, cyclic(4).unwrap());
        for x in 0..4 {
            assert_eq!(stabilizer(&c4, x).members, vec![0]);
        }
        let s3 = act(3, symmetric(3).unwrap());
        let st = stabilizer(&s3, 0);
        assert_eq!(st.members.len(), 2);
        for &m in &st.members {
            assert_eq!(s3.elements()[m].apply(0), 0);
        }
        let brute = s3.elements().iter().filter(|a| a.apply(0) == 0).count();
        assert_eq!(brute, 2);
        let trivial = act(1, vec![Permutation::identity(1)]);
        assert_eq!(stabilizer(&trivial, 0).members, vec![0]);
    }

    /// Exhaustive pair-orbit oracle: label each pair by the set of its images
    /// under every group element.
    fn brute_orbital_count(a: &GroupAction) -> usize {
        let n = a.n_points();
        let mut classes = BTreeSet::new();
        for x in 0..n {
            for y in 0..n {
                let orbit: BTreeSet<(usize, usize)> = a
                    .elements()
                    .iter()
                    .map(|g| (g.apply(x), g.apply(y)))
                    .collect();
                classes.insert(orbit);
            }
        }
        classes.len()
    }

    #[test]
    fn orbital_counts() {
        let c2 = act(2, cyclic(2).unwrap());
        let o = orbitals(&c2).unwrap();
        assert_eq!(o, vec![vec![(0, 0), (1, 1)], vec![(0, 1), (1, 0)]]);

        let s3 = act(3, symmetric(3).unwrap());
        assert_eq!(orbitals(&s3).unwrap().len(), 2);
        assert_eq!(brute_orbital_count(&s3), 2);

        let c4 = act(4, cyclic(4).unwrap());
        assert_eq!(orbitals(&c4).unwrap().len(), 4);
        assert_eq!(brute_orbital_count(&c4), 4);

        let swap = act(3, vec![Permutation::cycle(3, &[0, 1]).unwrap()]);
        assert!(matches!(orbitals(&swap), Err(Error::NotTransitive)));
    }

    #[test]
    fn regular_action_of_s3() {
        let s3 = act(3, symmetric(3).unwrap());
        let reg = s3.regular(DEFAULT_CAP).unwrap();
        assert_eq!(reg.n_points(), 6);
        assert_eq!(reg.order(), 6);
        assert!(is_transitive(&reg));
        for x in 0..6 {
            assert_eq!(stabilizer(&reg, x).members.len(), 1);
        }
        assert_eq!(orbitals(&reg).unwrap().len(), 6);
    }

    #[test]
    fn orbitals_match_stabilizer_orbits() {
        for gens in [dihedral(5).unwrap(), dihedral(6).unwrap(), symmetric(4).unwrap()] {
            let n = gens[0].len();
            let a = act(n, gens);
            assert_eq!(orbitals(&a).unwrap().len(), stabilizer_orbits(&a, 0).len());
        }
    }
}
