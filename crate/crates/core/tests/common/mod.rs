//! Brute-force reference implementations for the integration tests.
//!
//! Nothing here calls into the labeling, enumerator or lefschetz modules.
//! Marks are chars `f`, `h`, `s`; their byte order matches the library's.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

pub type Shape = (char, usize);
pub type Marks = Vec<char>;

/// Adjacency lists of a Dynkin diagram. `D` puts its two short arms at
/// vertices 0 and 1 on the branch vertex 2; `E` branches at vertex 1 with
/// arms `0`, `2-3` and `4-5-...`.
pub fn adjacency((kind, rank): Shape) -> Vec<Vec<usize>> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match kind {
        'A' => edges.extend((1..rank).map(|v| (v - 1, v))),
        'D' => {
            edges.extend([(0, 2), (1, 2)]);
            edges.extend((3..rank).map(|v| (v - 1, v)));
        }
        'E' => {
            edges.extend([(0, 1), (1, 2), (2, 3), (1, 4)]);
            edges.extend((5..rank).map(|v| (v - 1, v)));
        }
        _ => panic!("kind {kind}"),
    }
    let mut adj = vec![Vec::new(); rank];
    for (u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

pub fn shapes_up_to(rank: usize) -> Vec<Shape> {
    let mut out: Vec<Shape> = (1..=rank).map(|n| ('A', n)).collect();
    out.extend((4..=rank).map(|n| ('D', n)));
    out.extend([6, 7, 8].into_iter().filter(|&n| n <= rank).map(|n| ('E', n)));
    out
}

fn vertex_ok(adj: &[Vec<usize>], marks: &[char], v: usize, index: u32) -> bool {
    let nb = |m: char| adj[v].iter().filter(|&&u| marks[u] == m).count();
    let me = marks[v];
    match index {
        2 => match me {
            'f' => nb('f') == 0,
            's' => nb('s') == 0 && nb('f') == 2,
            _ => false,
        },
        3 => {
            let local = match me {
                'f' => nb('f') == 0,
                's' => nb('f') == 1,
                _ => false,
            };
            let mut paths = true;
            for (i, &a) in adj[v].iter().enumerate() {
                for &b in &adj[v][i + 1..] {
                    let fs = [marks[a], me, marks[b]].iter().filter(|&&c| c == 'f').count();
                    paths &= fs == 1;
                }
            }
            local && paths
        }
        4 => match me {
            'f' | 'h' => nb('f') + nb('h') == 0,
            's' => nb('s') == 0 && nb('f') == 1 && nb('h') == 1,
            _ => false,
        },
        _ => false,
    }
}

/// Whether every vertex satisfies the local rules of `index`.
pub fn locally_valid(shape: Shape, marks: &[char], index: u32) -> bool {
    if index == 3 && shape.0 == 'E' {
        return false;
    }
    let adj = adjacency(shape);
    (0..marks.len()).all(|v| vertex_ok(&adj, marks, v, index))
}

/// Every marking in `{f,h,s}^rank` passing [`locally_valid`], by full
/// enumeration.
pub fn exhaustive_markings(shape: Shape, index: u32) -> Vec<Marks> {
    let n = shape.1;
    let mut out = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let mut x = code;
        let marks: Marks = (0..n)
            .map(|_| {
                let c = ['f', 'h', 's'][x % 3];
                x /= 3;
                c
            })
            .rev()
            .collect();
        if locally_valid(shape, &marks, index) {
            out.push(marks);
        }
    }
    out.sort();
    out
}

/// Same set as [`exhaustive_markings`], checking each vertex as soon as its
/// closed neighborhood is assigned.
pub fn pruned_markings(shape: Shape, index: u32) -> Vec<Marks> {
    if index == 3 && shape.0 == 'E' {
        return Vec::new();
    }
    let adj = adjacency(shape);
    let n = shape.1;
    let mut due = vec![Vec::new(); n];
    for (v, nbrs) in adj.iter().enumerate() {
        let last = nbrs.iter().copied().chain([v]).max().unwrap();
        due[last].push(v);
    }
    let mut out = Vec::new();
    let mut marks = vec!['s'; n];
    fn go(k: usize, adj: &[Vec<usize>], due: &[Vec<usize>], index: u32, marks: &mut Marks, out: &mut Vec<Marks>) {
        if k == marks.len() {
            out.push(marks.clone());
            return;
        }
        for c in ['f', 'h', 's'] {
            marks[k] = c;
            if due[k].iter().all(|&v| vertex_ok(adj, marks, v, index)) {
                go(k + 1, adj, due, index, marks, out);
            }
        }
    }
    go(0, &adj, &due, index, &mut marks, &mut out);
    out.sort();
    out
}

/// `(N, H, M)`: fixed curves, square-fixed curves, and isolated points
/// forced on the component.
pub fn counts(shape: Shape, marks: &[char]) -> (usize, usize, usize) {
    let adj = adjacency(shape);
    let tally = |c: char| marks.iter().filter(|&&m| m == c).count();
    let mut contacts = 0;
    for v in 0..marks.len() {
        for &u in &adj[v] {
            if u > v && (marks[u] == 's' || marks[v] == 's') {
                contacts += 1;
            }
        }
    }
    (tally('f'), tally('h'), 2 * tally('s') + 2 * tally('h') - contacts)
}

/// `(N, H, max M)` per index.
pub fn budget(index: u32) -> Option<(usize, usize, usize)> {
    match index {
        2 => Some((10, 0, 0)),
        3 => Some((6, 0, 9)),
        4 => Some((4, 6, 12)),
        _ => None,
    }
}

/// Graph automorphisms by backtracking.
pub fn automorphisms(shape: Shape) -> Vec<Vec<usize>> {
    let adj = adjacency(shape);
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; adj.len()];
    let mut used = vec![false; adj.len()];
    fn go(v: usize, adj: &[Vec<usize>], image: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if v == adj.len() {
            out.push(image.clone());
            return;
        }
        for x in 0..adj.len() {
            if used[x] || adj[x].len() != adj[v].len() {
                continue;
            }
            let consistent = (0..v).all(|u| adj[v].contains(&u) == adj[x].contains(&image[u]));
            if consistent {
                image[v] = x;
                used[x] = true;
                go(v + 1, adj, image, used, out);
                used[x] = false;
            }
        }
    }
    go(0, &adj, &mut image, &mut used, &mut out);
    out
}

/// Lexicographically least marking in the automorphism orbit.
pub fn canonical(shape: Shape, marks: &[char]) -> Marks {
    automorphisms(shape)
        .iter()
        .map(|p| {
            let mut m = vec![' '; marks.len()];
            for (v, &x) in p.iter().enumerate() {
                m[x] = marks[v];
            }
            m
        })
        .min()
        .unwrap()
}

/// Every multiset of shapes with total rank `rank`, each sorted.
pub fn multisets(rank: usize) -> Vec<Vec<Shape>> {
    let shapes = shapes_up_to(rank);
    let mut out = Vec::new();
    fn go(shapes: &[Shape], start: usize, left: usize, cur: &mut Vec<Shape>, out: &mut Vec<Vec<Shape>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..shapes.len() {
            if shapes[i].1 <= left {
                cur.push(shapes[i]);
                go(shapes, i, left - shapes[i].1, cur, out);
                cur.pop();
            }
        }
    }
    go(&shapes, 0, rank, &mut Vec::new(), &mut out);
    out
}

pub fn shape_name(shapes: &[Shape]) -> String {
    shapes
        .iter()
        .map(|(k, n)| format!("{k}{n}"))
        .collect::<Vec<_>>()
        .join("+")
}

/// Per-shape canonical markings, memoized.
#[derive(Default)]
pub struct Oracle {
    cache: BTreeMap<(Shape, u32), Vec<Marks>>,
}

impl Oracle {
    pub fn markings(&mut self, shape: Shape, index: u32) -> &[Marks] {
        self.cache.entry((shape, index)).or_insert_with(|| {
            let set: BTreeSet<Marks> = pruned_markings(shape, index)
                .iter()
                .map(|m| canonical(shape, m))
                .collect();
            set.into_iter().collect()
        })
    }

    /// Whether some combination of component markings meets the budget.
    pub fn feasible(&mut self, shapes: &[Shape], index: u32) -> bool {
        let Some((n, h, m)) = budget(index) else {
            return false;
        };
        // reachable (N, H) -> least M
        let mut reach: BTreeMap<(usize, usize), usize> = BTreeMap::from([((0, 0), 0)]);
        for &shape in shapes {
            let opts: BTreeSet<(usize, usize, usize)> =
                self.markings(shape, index).iter().map(|mk| counts(shape, mk)).collect();
            let mut next = BTreeMap::new();
            for (&(a, b), &c) in &reach {
                for &(da, db, dc) in &opts {
                    if a + da <= n && b + db <= h {
                        let e = next.entry((a + da, b + db)).or_insert(usize::MAX);
                        *e = (*e).min(c + dc);
                    }
                }
            }
            reach = next;
        }
        reach.get(&(n, h)).is_some_and(|&least| least <= m)
    }

    /// Every labeling meeting the budget, up to diagram automorphisms and
    /// permutations of identical components.
    pub fn labelings(&mut self, shapes: &[Shape], index: u32) -> BTreeSet<Vec<Marks>> {
        let Some((n, h, m)) = budget(index) else {
            return BTreeSet::new();
        };
        let per: Vec<Vec<Marks>> = shapes.iter().map(|&s| self.markings(s, index).to_vec()).collect();
        let mut out = BTreeSet::new();
        if per.iter().any(Vec::is_empty) {
            return out;
        }
        let mut pick = vec![0usize; shapes.len()];
        loop {
            let chosen: Vec<Marks> = pick.iter().zip(&per).map(|(&i, opts)| opts[i].clone()).collect();
            let total = shapes
                .iter()
                .zip(&chosen)
                .map(|(&s, mk)| counts(s, mk))
                .fold((0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
            if total.0 == n && total.1 == h && total.2 <= m {
                let mut keyed: Vec<(Shape, Marks)> = shapes.iter().copied().zip(chosen).collect();
                keyed.sort();
                out.insert(keyed.into_iter().map(|(_, mk)| mk).collect());
            }
            // odometer
            let mut k = 0;
            loop {
                if k == pick.len() {
                    return out;
                }
                pick[k] += 1;
                if pick[k] < per[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }
}

pub fn mark_chars(marks: &[enriques18::labeling::Mark]) -> Marks {
    marks.iter().map(|m| m.symbol()).collect()
}
