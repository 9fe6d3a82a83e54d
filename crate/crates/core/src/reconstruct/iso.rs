//! Exact isomorphism of small node-colored directed multigraphs with typed
//! arcs, by colour refinement followed by backtracking.

use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColoredDigraph {
    pub colors: Vec<String>,
    /// Arc multiplicities keyed by `(tail, head, kind)`.
    pub arcs: BTreeMap<(usize, usize, u8), usize>,
}

impl ColoredDigraph {
    pub fn add_node(&mut self, color: impl Into<String>) -> usize {
        self.colors.push(color.into());
        self.colors.len() - 1
    }

    pub fn add_arc(&mut self, tail: usize, head: usize, kind: u8) {
        *self.arcs.entry((tail, head, kind)).or_default() += 1;
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for &(t, h, _) in self.arcs.keys() {
            out[t].push(h);
            out[h].push(t);
        }
        for n in &mut out {
            n.sort_unstable();
            n.dedup();
        }
        out
    }

    fn count(&self, t: usize, h: usize) -> Vec<(u8, usize)> {
        self.arcs
            .range((t, h, 0)..=(t, h, u8::MAX))
            .map(|(&(_, _, k), &n)| (k, n))
            .collect()
    }
}

/// Joint colour refinement of both graphs so class ids are comparable.
fn refine(a: &ColoredDigraph, b: &ColoredDigraph) -> (Vec<usize>, Vec<usize>) {
    let mut ids: BTreeMap<String, usize> = BTreeMap::new();
    let mut init = |g: &ColoredDigraph| -> Vec<usize> {
        g.colors
            .iter()
            .map(|c| {
                let n = ids.len();
                *ids.entry(c.clone()).or_insert(n)
            })
            .collect()
    };
    let (mut ca, mut cb) = (init(a), init(b));
    loop {
        let mut sigs: BTreeMap<(usize, Vec<(u8, bool, usize, usize)>), usize> = BTreeMap::new();
        let step = |g: &ColoredDigraph, col: &[usize]| -> Vec<(usize, Vec<(u8, bool, usize, usize)>)> {
            let mut nb: Vec<Vec<(u8, bool, usize, usize)>> = vec![Vec::new(); g.len()];
            for (&(t, h, k), &n) in &g.arcs {
                nb[t].push((k, true, col[h], n));
                nb[h].push((k, false, col[t], n));
            }
            (0..g.len())
                .map(|v| {
                    let mut s = std::mem::take(&mut nb[v]);
                    s.sort_unstable();
                    (col[v], s)
                })
                .collect()
        };
        let (sa, sb) = (step(a, &ca), step(b, &cb));
        let mut assign = |s: Vec<(usize, Vec<(u8, bool, usize, usize)>)>| -> Vec<usize> {
            s.into_iter()
                .map(|k| {
                    let n = sigs.len();
                    *sigs.entry(k).or_insert(n)
                })
                .collect()
        };
        let (na, nb) = (assign(sa), assign(sb));
        let classes = |v: &[usize]| {
            let mut s = v.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        let stable = classes(&na) == classes(&ca) && classes(&nb) == classes(&cb);
        ca = na;
        cb = nb;
        if stable {
            return (ca, cb);
        }
    }
}

/// A bijection `a → b` preserving colours and arc multiplicities, if any.
pub fn isomorphism(a: &ColoredDigraph, b: &ColoredDigraph) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.arcs.values().sum::<usize>() != b.arcs.values().sum::<usize>() {
        return None;
    }
    let (ca, cb) = refine(a, b);
    let histogram = |c: &[usize]| {
        let mut h: HashMap<usize, usize> = HashMap::new();
        for &x in c {
            *h.entry(x).or_default() += 1;
        }
        h
    };
    let ha = histogram(&ca);
    if ha != histogram(&cb) {
        return None;
    }
    // connected order, starting from the rarest classes
    let nbrs = a.neighbours();
    let nbrs_b = b.neighbours();
    let mut seeds: Vec<usize> = (0..a.len()).collect();
    seeds.sort_by_key(|&v| (ha[&ca[v]], v));
    let mut order = Vec::with_capacity(a.len());
    let mut seen = vec![false; a.len()];
    for s in seeds {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &nbrs[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; a.len()];
    let mut inv = vec![usize::MAX; b.len()];
    fn consistent(
        a: &ColoredDigraph,
        b: &ColoredDigraph,
        nbrs_a: &[Vec<usize>],
        nbrs_b: &[Vec<usize>],
        map: &[usize],
        inv: &[usize],
        v: usize,
        w: usize,
    ) -> bool {
        if a.count(v, v) != b.count(w, w) {
            return false;
        }
        for &x in &nbrs_a[v] {
            if x != v
                && map[x] != usize::MAX
                && (a.count(v, x) != b.count(w, map[x]) || a.count(x, v) != b.count(map[x], w))
            {
                return false;
            }
        }
        for &y in &nbrs_b[w] {
            if y != w && inv[y] != usize::MAX && !nbrs_a[v].contains(&inv[y]) {
                return false;
            }
        }
        true
    }
    #[allow(clippy::too_many_arguments)]
    fn search(
        k: usize,
        order: &[usize],
        a: &ColoredDigraph,
        b: &ColoredDigraph,
        ca: &[usize],
        cb: &[usize],
        nbrs_a: &[Vec<usize>],
        nbrs_b: &[Vec<usize>],
        map: &mut Vec<usize>,
        inv: &mut Vec<usize>,
    ) -> bool {
        let Some(&v) = order.get(k) else { return true };
        for w in 0..b.len() {
            if inv[w] != usize::MAX || cb[w] != ca[v] || !consistent(a, b, nbrs_a, nbrs_b, map, inv, v, w) {
                continue;
            }
            map[v] = w;
            inv[w] = v;
            if search(k + 1, order, a, b, ca, cb, nbrs_a, nbrs_b, map, inv) {
                return true;
            }
            map[v] = usize::MAX;
            inv[w] = usize::MAX;
        }
        false
    }
    if search(0, &order, a, b, &ca, &cb, &nbrs, &nbrs_b, &mut map, &mut inv) {
        Some(map)
    } else {
        None
    }
}
