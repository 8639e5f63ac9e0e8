//! The automorphism group of the 27-line incidence graph, by explicit closure.

use std::collections::{BTreeSet, HashSet, VecDeque};

use super::labels::{meet_masks, LineLabel, NUM_LINES};

/// Permutation of the line indices 0..27.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(pub [u8; NUM_LINES]);

impl Perm {
    pub fn identity() -> Self {
        Perm(std::array::from_fn(|k| k as u8))
    }

    pub fn apply(&self, x: u8) -> u8 {
        self.0[x as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(std::array::from_fn(|k| self.0[other.0[k] as usize]))
    }

    pub fn inverse(&self) -> Perm {
        let mut out = [0u8; NUM_LINES];
        for (k, &v) in self.0.iter().enumerate() {
            out[v as usize] = k as u8;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Perm::identity()
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Does the permutation preserve the meet relation?
    pub fn preserves_incidence(&self) -> bool {
        let m = meet_masks();
        (0..NUM_LINES).all(|i| {
            (0..NUM_LINES).all(|j| {
                (m[i] >> j & 1) == (m[self.0[i] as usize] >> self.0[j] & 1)
            })
        })
    }

    pub fn from_label_map(f: impl Fn(LineLabel) -> LineLabel) -> Perm {
        Perm(std::array::from_fn(|k| f(LineLabel::from_index(k)).index() as u8))
    }

    /// Subscript permutation; `sigma[i]` is the 0-based image of `i + 1`.
    pub fn from_subscripts(sigma: [u8; 6]) -> Perm {
        Perm::from_label_map(|l| l.permute(&sigma))
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(k, &v)| k == v as usize).count()
    }
}

/// The a↔b swap fixing every c_ij.
pub fn swap_ab() -> Perm {
    Perm::from_label_map(|l| match l {
        LineLabel::A(i) => LineLabel::B(i),
        LineLabel::B(i) => LineLabel::A(i),
        c => c,
    })
}

/// Reflection in the class `L − E_1 − E_2 − E_3`.
pub fn cremona_reflection() -> Perm {
    use LineLabel::*;
    Perm::from_label_map(|l| match l {
        A(i) if i <= 3 => {
            let mut r = [1u8, 2, 3].into_iter().filter(|&j| j != i);
            LineLabel::c(r.next().unwrap(), r.next().unwrap())
        }
        B(i) if i >= 4 => {
            let mut r = [4u8, 5, 6].into_iter().filter(|&j| j != i);
            LineLabel::c(r.next().unwrap(), r.next().unwrap())
        }
        C(j, k) if k <= 3 => A(6 - j - k),
        C(j, k) if j >= 4 => B(15 - j - k),
        other => other,
    })
}

pub fn generators() -> Vec<Perm> {
    vec![
        Perm::from_subscripts([1, 0, 2, 3, 4, 5]),
        Perm::from_subscripts([1, 2, 3, 4, 5, 0]),
        swap_ab(),
        cremona_reflection(),
    ]
}

#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub generators: Vec<Perm>,
    /// All elements, sorted.
    pub elements: Vec<Perm>,
}

impl AutomorphismGroup {
    pub fn closure(generators: Vec<Perm>) -> Self {
        let mut seen: HashSet<Perm> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(Perm::identity());
        queue.push_back(Perm::identity());
        while let Some(g) = queue.pop_front() {
            for s in &generators {
                let h = s.compose(&g);
                if seen.insert(h) {
                    queue.push_back(h);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        AutomorphismGroup { generators, elements }
    }

    pub fn compute() -> Self {
        AutomorphismGroup::closure(generators())
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn involutions(&self) -> Vec<Perm> {
        self.elements.iter().filter(|g| g.is_involution()).copied().collect()
    }

    /// Orbit of `start` under the generated group.
    pub fn orbit<T: Ord + Clone>(&self, start: T, act: impl Fn(&Perm, &T) -> T) -> BTreeSet<T> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for s in &self.generators {
                let y = act(s, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_preserve_incidence() {
        for g in generators() {
            assert!(g.preserves_incidence());
            assert!(g.inverse().compose(&g).is_identity());
        }
        assert!(swap_ab().is_involution());
        assert!(cremona_reflection().is_involution());
    }

    #[test]
    fn swap_with_every_subscript_permutation() {
        fn heap(k: usize, a: &mut [u8; 6], out: &mut Vec<[u8; 6]>) {
            if k == 1 {
                out.push(*a);
                return;
            }
            for i in 0..k {
                heap(k - 1, a, out);
                if k % 2 == 0 {
                    a.swap(i, k - 1);
                } else {
                    a.swap(0, k - 1);
                }
            }
        }
        let mut all = Vec::new();
        heap(6, &mut [0, 1, 2, 3, 4, 5], &mut all);
        assert_eq!(all.len(), 720);
        for s in all {
            let p = swap_ab().compose(&Perm::from_subscripts(s));
            assert!(p.preserves_incidence());
        }
    }

    #[test]
    fn subscripts_and_swap_alone_are_too_small() {
        let g = AutomorphismGroup::closure(generators()[..3].to_vec());
        assert_eq!(g.order(), 1440);
    }

    #[test]
    fn reflection_matches_picard_action() {
        use super::super::labels::intersection_number;
        let r = [1i64, 1, 1, 1, 0, 0, 0];
        let refl = cremona_reflection();
        for l in LineLabel::all() {
            let x = l.picard_class();
            let k = intersection_number(&x, &r);
            // s(x) = x + (x·r) r with r² = −2
            let img: [i64; 7] = std::array::from_fn(|i| x[i] + k * r[i]);
            let target = LineLabel::from_index(refl.apply(l.index() as u8) as usize);
            assert_eq!(img, target.picard_class(), "{l}");
        }
    }
}
