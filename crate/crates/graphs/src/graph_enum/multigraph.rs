use std::fmt;

/// A finite multigraph; loops and parallel edges are allowed.
///
/// Edge `i` joins `edges[i].0 <= edges[i].1`. In the half-edge picture,
/// edge `i` consists of half-edge `2i` at its first endpoint and `2i + 1`
/// at its second, so the pairing involution is `h ↦ h ^ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    /// Panics if an endpoint is out of range.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges: Vec<_> = edges
            .into_iter()
            .map(|(a, b)| {
                assert!(a < vertex_count && b < vertex_count, "edge ({a},{b}) out of range");
                (a.min(b), a.max(b))
            })
            .collect();
        MultiGraph { vertex_count, edges }
    }

    /// Graph with the given symmetric multiplicity matrix (loops on the
    /// diagonal), edges listed in increasing (a, b) order.
    pub fn from_adjacency(n: usize, adj: &[u8]) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a..n {
                for _ in 0..adj[a * n + b] {
                    edges.push((a, b));
                }
            }
        }
        MultiGraph { vertex_count: n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn half_edge_count(&self) -> usize {
        2 * self.edges.len()
    }

    /// Vertex carrying half-edge `h`.
    pub fn incidence(&self, h: usize) -> usize {
        let (a, b) = self.edges[h / 2];
        if h.is_multiple_of(2) { a } else { b }
    }

    /// The other half of the edge containing `h`.
    pub fn pairing(h: usize) -> usize {
        h ^ 1
    }

    pub fn is_loop(&self, i: usize) -> bool {
        let (a, b) = self.edges[i];
        a == b
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e.windows(2).any(|w| w[0] == w[1] && w[0].0 != w[0].1)
    }

    /// Row-major n×n multiplicity matrix with loop counts on the diagonal.
    pub fn adjacency(&self) -> Vec<u8> {
        let n = self.vertex_count;
        let mut adj = vec![0u8; n * n];
        for &(a, b) in &self.edges {
            adj[a * n + b] += 1;
            if a != b {
                adj[b * n + a] += 1;
            }
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Every vertex has degree at least 3.
    pub fn is_admissible(&self) -> bool {
        self.degrees().iter().all(|&d| d >= 3)
    }

    /// Component index of every vertex, numbered by smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[v] = label[r];
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// First Betti number |E| − |V| + #components.
    pub fn rank(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertex_count
    }

    /// Vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &MultiGraph) -> MultiGraph {
        let off = self.vertex_count;
        let edges = self.edges.iter().copied().chain(other.edges.iter().map(|&(a, b)| (a + off, b + off)));
        MultiGraph::new(self.vertex_count + other.vertex_count, edges)
    }

    /// Split into components, each relabelled with vertices in order.
    pub fn component_graphs(&self) -> Vec<MultiGraph> {
        let comp = self.components();
        let count = self.component_count();
        let mut index = vec![0; self.vertex_count];
        let mut sizes = vec![0; count];
        for v in 0..self.vertex_count {
            index[v] = sizes[comp[v]];
            sizes[comp[v]] += 1;
        }
        let mut edges = vec![Vec::new(); count];
        for &(a, b) in &self.edges {
            edges[comp[a]].push((index[a], index[b]));
        }
        sizes.into_iter().zip(edges).map(|(n, e)| MultiGraph::new(n, e)).collect()
    }

    /// Parses the dump format `v=<int> edges=[(a,b),…]`.
    pub fn parse_dump(line: &str) -> Option<MultiGraph> {
        let line = line.trim();
        let rest = line.strip_prefix("v=")?;
        let (v, rest) = rest.split_once(' ')?;
        let v: usize = v.parse().ok()?;
        let inner = rest.trim().strip_prefix("edges=[")?.strip_suffix(']')?;
        let mut edges = Vec::new();
        let mut s = inner.trim();
        while !s.is_empty() {
            let body = s.strip_prefix('(')?;
            let (pair, tail) = body.split_once(')')?;
            let (a, b) = pair.split_once(',')?;
            let (a, b): (usize, usize) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
            if a >= v || b >= v {
                return None;
            }
            edges.push((a, b));
            s = tail.trim_start().strip_prefix(',').unwrap_or(tail).trim_start();
        }
        Some(MultiGraph::new(v, edges))
    }
}

/// The dump format: `v=<int> edges=[(a,b),…]`, loops as `(a,a)`.
impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v={} edges=[", self.vertex_count)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "]")
    }
}

/// Frequently used small graphs.
pub mod named {
    use super::MultiGraph;

    pub fn figure_eight() -> MultiGraph {
        MultiGraph::new(1, [(0, 0), (0, 0)])
    }

    pub fn theta() -> MultiGraph {
        MultiGraph::new(2, [(0, 1), (0, 1), (0, 1)])
    }

    pub fn dumbbell() -> MultiGraph {
        MultiGraph::new(2, [(0, 0), (0, 1), (1, 1)])
    }

    pub fn complete(n: usize) -> MultiGraph {
        MultiGraph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
    }
}
