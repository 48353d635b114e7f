//! Stallings folding for finitely generated subgroups of free groups.

use std::collections::BTreeSet;

use super::Word;

/// Labeled graph with edges `(source, generator, target)` read positively.
struct FoldGraph {
    parent: Vec<usize>,
    edges: BTreeSet<(usize, usize, usize)>,
}

impl FoldGraph {
    fn new() -> Self {
        FoldGraph { parent: vec![0], edges: BTreeSet::new() }
    }

    fn add_vertex(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = v;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    /// Adds a closed path at the basepoint spelling `w`.
    fn add_petal(&mut self, w: &Word) {
        let mut current = 0;
        let n = w.len();
        for (k, l) in w.letters().iter().enumerate() {
            let next = if k + 1 == n { 0 } else { self.add_vertex() };
            if l.inverse {
                self.edges.insert((next, l.gen, current));
            } else {
                self.edges.insert((current, l.gen, next));
            }
            current = next;
        }
    }

    /// Identifies vertices until no vertex has two edges with the same signed label.
    fn fold(&mut self) {
        loop {
            let edges: Vec<_> = self.edges.iter().copied().collect();
            let mut canon: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
            for (s, g, t) in edges {
                let (s, t) = (self.find(s), self.find(t));
                canon.insert((s, g, t));
            }
            self.edges = canon;
            let mut merge = None;
            let mut out_seen = std::collections::BTreeMap::new();
            let mut in_seen = std::collections::BTreeMap::new();
            for &(s, g, t) in &self.edges {
                if let Some(&t2) = out_seen.get(&(s, g)) {
                    if t2 != t {
                        merge = Some((t, t2));
                        break;
                    }
                }
                out_seen.insert((s, g), t);
                if let Some(&s2) = in_seen.get(&(t, g)) {
                    if s2 != s {
                        merge = Some((s, s2));
                        break;
                    }
                }
                in_seen.insert((t, g), s);
            }
            match merge {
                Some((a, b)) => {
                    let (ra, rb) = (self.find(a), self.find(b));
                    // keep the basepoint as representative
                    if rb == self.find(0) {
                        self.parent[ra] = rb;
                    } else {
                        self.parent[rb] = ra;
                    }
                }
                None => return,
            }
        }
    }

    /// Removes non-basepoint vertices of degree one, repeatedly.
    fn trim(&mut self) {
        let base = self.find(0);
        loop {
            let mut degree = std::collections::BTreeMap::<usize, usize>::new();
            for &(s, _, t) in &self.edges {
                *degree.entry(s).or_default() += 1;
                *degree.entry(t).or_default() += 1;
            }
            let leaf = degree.iter().find(|&(&v, &d)| v != base && d == 1).map(|(&v, _)| v);
            match leaf {
                Some(v) => self.edges.retain(|&(s, _, t)| s != v && t != v),
                None => return,
            }
        }
    }
}

/// Whether the subgroup generated by `generators` is the whole free group of `rank`.
///
/// Folds the bouquet of the generator words and compares the trimmed core
/// with the rose: one vertex carrying a loop for every generator.
pub fn subgroup_is_whole_free_group(generators: &[Word], rank: usize) -> bool {
    let mut g = FoldGraph::new();
    for w in generators.iter().filter(|w| !w.is_identity()) {
        g.add_petal(w);
    }
    g.fold();
    g.trim();
    let base = g.find(0);
    let loops: BTreeSet<usize> =
        g.edges.iter().filter(|&&(s, _, t)| s == base && t == base).map(|&(_, gen, _)| gen).collect();
    g.edges.len() == rank && loops.len() == rank && loops.iter().copied().eq(1..=rank)
}

/// Decides whether `{u, v}` generate `F_2`.
pub fn is_surjective_to_f2(u: &Word, v: &Word) -> bool {
    subgroup_is_whole_free_group(&[u.clone(), v.clone()], 2)
}
