//! Combinatorics of the 27 lines: tritangent trios, double-sixes, Trieder
//! pairs, triads, enneahedra and the automorphism group.

pub mod group;
pub mod labels;

use std::collections::{BTreeMap, BTreeSet, HashMap};

pub use group::{AutomorphismGroup, Perm};
pub use labels::{meets_rule, LineLabel, NUM_LINES};

pub type Trio = [u8; 3];

fn mask(lines: &[u8]) -> u32 {
    lines.iter().fold(0, |m, &l| m | 1 << l)
}

/// All 45 triples of pairwise meeting lines, each sorted, in lexicographic order.
pub fn enumerate_tritangents() -> Vec<Trio> {
    let meets = labels::meet_masks();
    let mut out = Vec::new();
    for i in 0..NUM_LINES as u8 {
        for j in i + 1..NUM_LINES as u8 {
            if meets[i as usize] & 1 << j == 0 {
                continue;
            }
            for k in j + 1..NUM_LINES as u8 {
                if meets[i as usize] & 1 << k != 0 && meets[j as usize] & 1 << k != 0 {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// Two sixes of skew lines with `first[k]` skew to exactly `second[k]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DoubleSix {
    pub first: [u8; 6],
    pub second: [u8; 6],
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum DoubleSixFamily {
    /// `a_1..a_6 | b_1..b_6`
    AB,
    /// `a_i b_i c_jk c_jl c_jm c_jn | a_j b_j c_ik …` (15 of them)
    Pair,
    /// `a_i a_j a_k c_mn c_ln c_lm | c_jk c_ik c_ij b_l b_m b_n` (20 of them)
    Triple,
}

impl DoubleSix {
    /// Canonical orientation: `first` sorted, smaller six first.
    pub fn canonical(first: [u8; 6], second: [u8; 6]) -> Self {
        let mut pairs: Vec<(u8, u8)> = first.into_iter().zip(second).collect();
        let (mut a, mut b): (Vec<u8>, Vec<u8>) = (first.to_vec(), second.to_vec());
        a.sort();
        b.sort();
        if b < a {
            pairs = pairs.into_iter().map(|(x, y)| (y, x)).collect();
        }
        pairs.sort();
        DoubleSix {
            first: std::array::from_fn(|k| pairs[k].0),
            second: std::array::from_fn(|k| pairs[k].1),
        }
    }

    pub fn lines(&self) -> u32 {
        mask(&self.first) | mask(&self.second)
    }

    pub fn family(&self) -> DoubleSixFamily {
        let c = (self.lines() >> 12).count_ones();
        match c {
            0 => DoubleSixFamily::AB,
            8 => DoubleSixFamily::Pair,
            6 => DoubleSixFamily::Triple,
            _ => unreachable!("impossible double-six shape"),
        }
    }

    /// Check both sixes are skew and the matching is the unique skew partner.
    pub fn verify(&self) -> bool {
        let m = labels::meet_masks();
        let skew6 = |s: &[u8; 6]| s.iter().all(|&x| m[x as usize] & mask(s) == 0);
        skew6(&self.first)
            && skew6(&self.second)
            && (0..6).all(|k| {
                (0..6).all(|l| (m[self.first[k] as usize] & 1 << self.second[l] == 0) == (k == l))
            })
    }

    pub fn map(&self, p: &Perm) -> DoubleSix {
        DoubleSix::canonical(self.first.map(|x| p.apply(x)), self.second.map(|x| p.apply(x)))
    }
}

/// All 36 double-sixes in canonical form, sorted.
pub fn enumerate_double_sixes() -> Vec<DoubleSix> {
    let m = labels::meet_masks();
    let mut sixes = Vec::new();
    let mut cur = Vec::new();
    fn extend(m: &[u32; NUM_LINES], start: u8, cur: &mut Vec<u8>, out: &mut Vec<[u8; 6]>) {
        if cur.len() == 6 {
            out.push(cur.clone().try_into().unwrap());
            return;
        }
        for x in start..NUM_LINES as u8 {
            if cur.iter().all(|&y| m[x as usize] & 1 << y == 0) {
                cur.push(x);
                extend(m, x + 1, cur, out);
                cur.pop();
            }
        }
    }
    extend(&m, 0, &mut cur, &mut sixes);
    let mut out = BTreeSet::new();
    for six in &sixes {
        let ms = mask(six);
        // partner: lines off the six meeting exactly five of its members
        let partner: Vec<u8> = (0..NUM_LINES as u8)
            .filter(|&x| ms & 1 << x == 0 && (m[x as usize] & ms).count_ones() == 5)
            .collect();
        if partner.len() != 6 {
            continue;
        }
        let second: [u8; 6] = std::array::from_fn(|k| {
            *partner
                .iter()
                .find(|&&y| m[y as usize] & 1 << six[k] == 0)
                .expect("skew partner")
        });
        out.insert(DoubleSix::canonical(*six, second));
    }
    out.into_iter().collect()
}

/// The 3×3 matrix of a Trieder pair: rows and columns are tritangent trios.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TriederPair {
    pub m: [[u8; 3]; 3],
}

impl TriederPair {
    pub fn rows(&self) -> [Trio; 3] {
        self.m.map(sorted3)
    }

    pub fn columns(&self) -> [Trio; 3] {
        std::array::from_fn(|c| sorted3([self.m[0][c], self.m[1][c], self.m[2][c]]))
    }

    pub fn lines(&self) -> u32 {
        self.m.iter().fold(0, |acc, r| acc | mask(r))
    }

    /// Canonical matrix from two trieders (sets of three disjoint trios).
    pub fn from_trieders(x: [Trio; 3], y: [Trio; 3]) -> Self {
        let mut x = x.map(sorted3);
        let mut y = y.map(sorted3);
        x.sort();
        y.sort();
        let (rows, cols) = if x <= y { (x, y) } else { (y, x) };
        let m = std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                let common = mask(&rows[r]) & mask(&cols[c]);
                debug_assert_eq!(common.count_ones(), 1);
                common.trailing_zeros() as u8
            })
        });
        TriederPair { m }
    }

    /// `(#a, #b, #c)` among the nine lines.
    pub fn shape(&self) -> (u32, u32, u32) {
        let l = self.lines();
        ((l & 0x3f).count_ones(), (l >> 6 & 0x3f).count_ones(), (l >> 12).count_ones())
    }

    pub fn map(&self, p: &Perm) -> TriederPair {
        TriederPair::from_trieders(self.rows().map(|t| t.map(|x| p.apply(x))), self.columns().map(|t| t.map(|x| p.apply(x))))
    }
}

fn sorted3(mut t: Trio) -> Trio {
    t.sort();
    t
}

/// All 120 Trieder pairs in canonical form, sorted.
pub fn enumerate_trieder_pairs(trios: &[Trio]) -> Vec<TriederPair> {
    let tm: Vec<u32> = trios.iter().map(|t| mask(t)).collect();
    let is_trio: HashMap<u32, usize> = tm.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut out = BTreeSet::new();
    let n = trios.len();
    for i in 0..n {
        for j in i + 1..n {
            if tm[i] & tm[j] != 0 {
                continue;
            }
            for k in j + 1..n {
                if tm[k] & (tm[i] | tm[j]) != 0 {
                    continue;
                }
                // columns: one line from each row forming a trio
                let mut cols = Vec::new();
                for &x in &trios[i] {
                    for &y in &trios[j] {
                        for &z in &trios[k] {
                            if is_trio.contains_key(&mask(&[x, y, z])) {
                                cols.push([x, y, z]);
                            }
                        }
                    }
                }
                for a in 0..cols.len() {
                    for b in a + 1..cols.len() {
                        for c in b + 1..cols.len() {
                            let (ma, mb, mc) = (mask(&cols[a]), mask(&cols[b]), mask(&cols[c]));
                            if ma & mb == 0 && ma & mc == 0 && mb & mc == 0 {
                                out.insert(TriederPair::from_trieders(
                                    [trios[i], trios[j], trios[k]],
                                    [cols[a], cols[b], cols[c]],
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Triples of Trieder pairs whose nine-line sets partition the 27 lines.
pub fn enumerate_triads(pairs: &[TriederPair]) -> Vec<[usize; 3]> {
    let pm: Vec<u32> = pairs.iter().map(TriederPair::lines).collect();
    let mut out = Vec::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if pm[i] & pm[j] != 0 {
                continue;
            }
            for k in j + 1..pairs.len() {
                if pm[k] & (pm[i] | pm[j]) == 0 {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnneahedronKind {
    /// Splits into three trieders in several ways, each way from a different triad.
    First,
    /// Splits into three trieders in exactly one way.
    Second,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Enneahedron {
    /// Indices into the tritangent list, ascending.
    pub trios: [usize; 9],
    pub kind: EnneahedronKind,
    /// Triads supplying the trieders of some division, ascending.
    pub triads: Vec<usize>,
    /// Every division into three trieders (trio indices).
    pub divisions: Vec<[[usize; 3]; 3]>,
}

/// Exact covers of the 27 lines by 9 tritangent trios, in lexicographic order.
pub fn exact_covers(trios: &[Trio]) -> Vec<[usize; 9]> {
    let tm: Vec<u32> = trios.iter().map(|t| mask(t)).collect();
    let mut by_line: Vec<Vec<usize>> = vec![Vec::new(); NUM_LINES];
    for (i, t) in trios.iter().enumerate() {
        for &l in t {
            by_line[l as usize].push(i);
        }
    }
    let full = (1u32 << NUM_LINES) - 1;
    let mut out = Vec::new();
    fn search(
        covered: u32,
        full: u32,
        tm: &[u32],
        by_line: &[Vec<usize>],
        cur: &mut Vec<usize>,
        out: &mut Vec<[usize; 9]>,
    ) {
        if covered == full {
            let mut s = cur.clone();
            s.sort();
            out.push(s.try_into().unwrap());
            return;
        }
        // branch on the uncovered line with fewest usable trios
        let mut best: Option<(usize, usize)> = None;
        for l in 0..NUM_LINES {
            if covered & 1 << l != 0 {
                continue;
            }
            let c = by_line[l].iter().filter(|&&t| tm[t] & covered == 0).count();
            if best.is_none_or(|(_, bc)| c < bc) {
                best = Some((l, c));
            }
        }
        let (l, c) = best.unwrap();
        if c == 0 {
            return;
        }
        for &t in &by_line[l] {
            if tm[t] & covered == 0 {
                cur.push(t);
                search(covered | tm[t], full, tm, by_line, cur, out);
                cur.pop();
            }
        }
    }
    search(0, full, &tm, &by_line, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// Enneahedra with their kind, given the trios, pairs and triads.
pub fn classify_enneahedra(trios: &[Trio], pairs: &[TriederPair], triads: &[[usize; 3]]) -> Vec<Enneahedron> {
    let trio_index: HashMap<Trio, usize> = trios.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    // every trieder (rows or columns of a pair), as sorted trio indices, with its pair
    let mut trieders: BTreeMap<[usize; 3], usize> = BTreeMap::new();
    for (pi, p) in pairs.iter().enumerate() {
        for side in [p.rows(), p.columns()] {
            let mut idx = side.map(|t| trio_index[&t]);
            idx.sort();
            trieders.insert(idx, pi);
        }
    }
    let mut triad_of = vec![usize::MAX; pairs.len()];
    for (ti, t) in triads.iter().enumerate() {
        for &p in t {
            triad_of[p] = ti;
        }
    }
    exact_covers(trios)
        .into_iter()
        .map(|cover| {
            let divisions = trieder_divisions(&cover, &trieders);
            let triads: BTreeSet<usize> = divisions
                .iter()
                .flat_map(|d| d.iter().map(|t| triad_of[trieders[t]]))
                .collect();
            let kind = if divisions.len() > 1 {
                EnneahedronKind::First
            } else {
                EnneahedronKind::Second
            };
            Enneahedron {
                trios: cover,
                kind,
                triads: triads.into_iter().collect(),
                divisions,
            }
        })
        .collect()
}

/// All ways to split nine trios into three trieders.
fn trieder_divisions(cover: &[usize; 9], trieders: &BTreeMap<[usize; 3], usize>) -> Vec<[[usize; 3]; 3]> {
    let mut found: Vec<[[usize; 3]; 3]> = Vec::new();
    let rest: Vec<usize> = cover[1..].to_vec();
    let first = cover[0];
    for a in 0..rest.len() {
        for b in a + 1..rest.len() {
            let mut t1 = [first, rest[a], rest[b]];
            t1.sort();
            if !trieders.contains_key(&t1) {
                continue;
            }
            let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(i, _)| i != a && i != b).map(|(_, &x)| x).collect();
            let f2 = remaining[0];
            for c in 1..remaining.len() {
                for d in c + 1..remaining.len() {
                    let mut t2 = [f2, remaining[c], remaining[d]];
                    t2.sort();
                    let mut t3: Vec<usize> = remaining[1..].iter().copied().filter(|&x| x != remaining[c] && x != remaining[d]).collect();
                    t3.sort();
                    let t3: [usize; 3] = t3.try_into().unwrap();
                    if trieders.contains_key(&t2) && trieders.contains_key(&t3) {
                        found.push([t1, t2, t3]);
                    }
                }
            }
        }
    }
    found
}

/// Everything enumerated once, for reuse across reports.
#[derive(Clone, Debug)]
pub struct Configurations {
    pub tritangents: Vec<Trio>,
    pub double_sixes: Vec<DoubleSix>,
    pub trieder_pairs: Vec<TriederPair>,
    pub triads: Vec<[usize; 3]>,
}

impl Configurations {
    pub fn compute() -> Self {
        let tritangents = enumerate_tritangents();
        let double_sixes = enumerate_double_sixes();
        let trieder_pairs = enumerate_trieder_pairs(&tritangents);
        let triads = enumerate_triads(&trieder_pairs);
        Configurations {
            tritangents,
            double_sixes,
            trieder_pairs,
            triads,
        }
    }

    pub fn enneahedra(&self) -> Vec<Enneahedron> {
        classify_enneahedra(&self.tritangents, &self.trieder_pairs, &self.triads)
    }

    pub fn trio_index(&self, t: &Trio) -> Option<usize> {
        let t = sorted3(*t);
        self.tritangents.binary_search(&t).ok()
    }

    pub fn double_six_index(&self, d: &DoubleSix) -> Option<usize> {
        self.double_sixes.binary_search(d).ok()
    }

    pub fn family_sizes(&self) -> (usize, usize, usize) {
        let mut f = (0, 0, 0);
        for d in &self.double_sixes {
            match d.family() {
                DoubleSixFamily::AB => f.0 += 1,
                DoubleSixFamily::Pair => f.1 += 1,
                DoubleSixFamily::Triple => f.2 += 1,
            }
        }
        f
    }

    pub fn trieder_shapes(&self) -> BTreeMap<(u32, u32, u32), usize> {
        let mut out = BTreeMap::new();
        for p in &self.trieder_pairs {
            *out.entry(p.shape()).or_insert(0) += 1;
        }
        out
    }
}

/// Orbit sizes of a line, a double-six, a tritangent trio and a triad.
pub fn orbit_sizes(group: &AutomorphismGroup, c: &Configurations) -> [usize; 4] {
    let triad_key = |t: &[TriederPair; 3]| {
        let mut t = *t;
        t.sort();
        t
    };
    let t0 = triad_key(&c.triads[0].map(|i| c.trieder_pairs[i]));
    [
        group.orbit(0u8, |p, &x| p.apply(x)).len(),
        group.orbit(c.double_sixes[0], |p, d| d.map(p)).len(),
        group.orbit(c.tritangents[0], |p, t| sorted3(t.map(|x| p.apply(x)))).len(),
        group.orbit(t0, |p, t| triad_key(&t.map(|x| x.map(p)))).len(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use LineLabel::*;

    fn idx(l: LineLabel) -> u8 {
        l.index() as u8
    }

    #[test]
    fn tritangent_counts() {
        let t = enumerate_tritangents();
        assert_eq!(t.len(), 45);
        let ccc = t.iter().filter(|t| t.iter().all(|&x| x >= 12)).count();
        assert_eq!((45 - ccc, ccc), (30, 15));
        for l in 0..27u8 {
            assert_eq!(t.iter().filter(|t| t.contains(&l)).count(), 5);
        }
        let mut probe = [idx(C(1, 2)), idx(C(3, 4)), idx(C(5, 6))];
        probe.sort();
        assert!(t.contains(&probe));
        // every meeting pair in exactly one trio
        let m = labels::meet_masks();
        for i in 0..27u8 {
            for j in i + 1..27 {
                let n = t.iter().filter(|t| t.contains(&i) && t.contains(&j)).count();
                assert_eq!(n, usize::from(m[i as usize] & 1 << j != 0));
            }
        }
    }

    #[test]
    fn double_six_counts() {
        let c = Configurations::compute();
        assert_eq!(c.double_sixes.len(), 36);
        assert_eq!(c.family_sizes(), (1, 15, 20));
        assert!(c.double_sixes.iter().all(DoubleSix::verify));
        let ab = DoubleSix::canonical(
            std::array::from_fn(|k| k as u8),
            std::array::from_fn(|k| 6 + k as u8),
        );
        assert!(ab.verify());
        assert!(c.double_six_index(&ab).is_some());
    }

    #[test]
    fn trieder_pairs_and_triads() {
        let c = Configurations::compute();
        assert_eq!(c.trieder_pairs.len(), 120);
        for p in &c.trieder_pairs {
            assert_eq!(p.lines().count_ones(), 9);
            for t in p.rows().iter().chain(p.columns().iter()) {
                assert!(c.trio_index(t).is_some());
            }
        }
        let shapes = c.trieder_shapes();
        assert_eq!(shapes.keys().copied().collect::<Vec<_>>(), vec![(0, 0, 9), (2, 2, 5), (3, 3, 3)]);
        assert_eq!(shapes.values().sum::<usize>(), 120);
        assert_eq!(c.triads.len(), 40);
        let mut seen = vec![0; 120];
        for t in &c.triads {
            for &p in t {
                seen[p] += 1;
            }
        }
        assert!(seen.iter().all(|&k| k == 1));
    }

    #[test]
    fn enneahedra_cover_exactly() {
        let c = Configurations::compute();
        let e = c.enneahedra();
        for x in &e {
            let mut count = [0; 27];
            for &t in &x.trios {
                for &l in &c.tritangents[t] {
                    count[l as usize] += 1;
                }
            }
            assert!(count.iter().all(|&k| k == 1));
        }
        let first = e.iter().filter(|x| x.kind == EnneahedronKind::First).count();
        assert_eq!((e.len(), first), (200, 40));
        for x in &e {
            match x.kind {
                EnneahedronKind::Second => assert_eq!((x.divisions.len(), x.triads.len()), (1, 1)),
                EnneahedronKind::First => assert_eq!((x.divisions.len(), x.triads.len()), (4, 4)),
            }
            // each division takes one trieder from each pair of the triad
            for d in &x.divisions {
                let mut pairs: Vec<usize> = d
                    .iter()
                    .map(|t| {
                        let trios = t.map(|k| c.tritangents[k]);
                        c.trieder_pairs
                            .iter()
                            .position(|p| {
                                let mut r = p.rows();
                                let mut s = p.columns();
                                let mut q = trios;
                                r.sort();
                                s.sort();
                                q.sort();
                                q == r || q == s
                            })
                            .unwrap()
                    })
                    .collect();
                pairs.sort();
                assert!(c.triads.iter().any(|t| {
                    let mut t = *t;
                    t.sort();
                    t.to_vec() == pairs
                }));
            }
        }
        for t in 0..40 {
            let second = e.iter().filter(|x| x.kind == EnneahedronKind::Second && x.triads == [t]).count();
            let first = e.iter().filter(|x| x.kind == EnneahedronKind::First && x.triads.contains(&t)).count();
            assert_eq!((first, second), (4, 4));
        }
    }

    #[test]
    fn group_order_and_orbits() {
        let c = Configurations::compute();
        let g = AutomorphismGroup::compute();
        assert_eq!(g.order(), 51840);
        assert!(g.elements.iter().all(Perm::preserves_incidence));
        assert_eq!(orbit_sizes(&g, &c), [27, 36, 45, 40]);
    }
}
