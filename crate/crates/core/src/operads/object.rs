use crate::error::{Error, Result};

/// Label and orientation of one edge `{x, y}` with `x < y`.
///
/// `forward` means the edge is oriented `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub label: u8,
    pub forward: bool,
}

impl Edge {
    pub fn new(label: u8, forward: bool) -> Self {
        Edge { label, forward }
    }

    #[inline]
    fn code(self) -> u64 {
        (self.label as u64 - 1) * 2 + self.forward as u64
    }
}

#[inline]
pub fn pair_count(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Position of the pair `{x, y}` (`x < y`) in lexicographic pair order.
#[inline]
pub fn pair_index(x: usize, y: usize, k: usize) -> usize {
    debug_assert!(x < y && y < k);
    x * (2 * k - x - 1) / 2 + (y - x - 1)
}

/// An object of `G_n(k)`: a label in `1..=n` and an orientation for every
/// edge of the complete graph on `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphObject {
    n: u8,
    k: usize,
    edges: Vec<Edge>,
}

/// Packed code of an object: per edge `(label - 1) * 2 + forward` in
/// `ceil(log2(2n))` bits, first edge in the most significant position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub u64);

impl CanonicalKey {
    pub fn bits_per_edge(n: u8) -> u32 {
        let m = 2 * n as u32;
        32 - (m - 1).leading_zeros()
    }
}

impl GraphObject {
    pub fn new(n: u8, k: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("n must be at least 1".into()));
        }
        if edges.len() != pair_count(k) {
            return Err(Error::Dimension(format!(
                "{} edges given for k={k}, expected {}",
                edges.len(),
                pair_count(k)
            )));
        }
        if let Some(e) = edges.iter().find(|e| e.label == 0 || e.label > n) {
            return Err(Error::LabelOutOfRange { label: e.label, n });
        }
        Ok(GraphObject { n, k, edges })
    }

    /// The unique object on a ground set with fewer than two elements.
    pub fn trivial(n: u8, k: usize) -> Self {
        assert!(k <= 1 && n >= 1);
        GraphObject { n, k, edges: Vec::new() }
    }

    /// Every edge labelled `label`, oriented along the element order.
    pub fn chain(n: u8, k: usize, label: u8) -> Self {
        GraphObject { n, k, edges: vec![Edge::new(label, true); pair_count(k)] }
    }

    /// Builds an object from a closure returning `(label, oriented (x, y))` for `x < y`.
    pub fn from_fn(n: u8, k: usize, mut f: impl FnMut(usize, usize) -> (u8, bool)) -> Result<Self> {
        let mut edges = Vec::with_capacity(pair_count(k));
        for x in 0..k {
            for y in x + 1..k {
                let (label, forward) = f(x, y);
                edges.push(Edge::new(label, forward));
            }
        }
        Self::new(n, k, edges)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge data for the unordered pair, `x != y` in any order.
    #[inline]
    pub fn edge(&self, x: usize, y: usize) -> Edge {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        self.edges[pair_index(a, b, self.k)]
    }

    #[inline]
    pub fn label(&self, x: usize, y: usize) -> u8 {
        self.edge(x, y).label
    }

    /// True iff the edge `{x, y}` is oriented `(x, y)`.
    #[inline]
    pub fn points(&self, x: usize, y: usize) -> bool {
        let e = self.edge(x, y);
        e.forward == (x < y)
    }

    /// Sets the edge `{x, y}` to `label`, oriented `(x, y)` when `x_to_y`.
    pub fn set(&mut self, x: usize, y: usize, label: u8, x_to_y: bool) {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        let k = self.k;
        self.edges[pair_index(a, b, k)] = Edge::new(label, x_to_y == (x < y));
    }

    /// Ordered pairs `(x, y)` with the edge oriented `(x, y)` and labelled `label`.
    pub fn arcs_with_label(&self, label: u8) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs().filter(move |&(x, y)| self.label(x, y) == label)
    }

    /// All oriented edges `(source, target)`.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.k;
        (0..k).flat_map(move |x| (x + 1..k).map(move |y| (x, y))).map(move |(x, y)| {
            if self.edges[pair_index(x, y, k)].forward {
                (x, y)
            } else {
                (y, x)
            }
        })
    }

    pub fn max_label(&self) -> u8 {
        self.edges.iter().map(|e| e.label).max().unwrap_or(0)
    }

    pub fn min_label(&self) -> u8 {
        self.edges.iter().map(|e| e.label).min().unwrap_or(u8::MAX)
    }

    pub fn key(&self) -> CanonicalKey {
        let b = CanonicalKey::bits_per_edge(self.n);
        let key = self.edges.iter().fold(0u64, |acc, e| (acc << b) | e.code());
        CanonicalKey(key)
    }

    pub fn key_bits(n: u8, k: usize) -> u32 {
        CanonicalKey::bits_per_edge(n) * pair_count(k) as u32
    }

    pub fn from_key(n: u8, k: usize, key: CanonicalKey) -> Result<Self> {
        let b = CanonicalKey::bits_per_edge(n);
        let e = pair_count(k);
        if Self::key_bits(n, k) > 64 {
            return Err(Error::BitBudget { needed: Self::key_bits(n, k), budget: 64 });
        }
        let mask = (1u64 << b) - 1;
        let edges = (0..e)
            .map(|i| {
                let code = (key.0 >> (b as usize * (e - 1 - i))) & mask;
                Edge::new((code / 2 + 1) as u8, code % 2 == 1)
            })
            .collect();
        if e > 0 && Self::key_bits(n, k) < 64 && key.0 >> Self::key_bits(n, k) != 0 {
            return Err(Error::Parse(format!("key {} has stray high bits", key.0)));
        }
        Self::new(n, k, edges)
    }

    /// The same edge data viewed with label bound `n`.
    pub fn with_n(&self, n: u8) -> Result<Self> {
        Self::new(n, self.k, self.edges.clone())
    }

    /// Adds `delta` to every label, keeping orientations, with new bound `n`.
    pub fn shift_labels(&self, delta: i16, n: u8) -> Result<Self> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let l = e.label as i16 + delta;
            if l < 1 || l > n as i16 {
                return Err(Error::LabelOutOfRange { label: l.max(0) as u8, n });
            }
            edges.push(Edge::new(l as u8, e.forward));
        }
        Self::new(n, self.k, edges)
    }
}
