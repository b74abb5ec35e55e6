use super::family::{in_family, FamilyTag, Decomposer, Mode};
use super::object::GraphObject;
use crate::error::{Error, Result};

/// A bijection of `0..k`, acting on objects from the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &i in &images {
            if i >= k || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotBijective(k));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    pub fn transposition(k: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..k).collect();
        v.swap(a, b);
        Permutation(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    /// All permutations of `0..k` in lexicographic order.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

fn check_label(i: u8, n: u8) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::LabelOutOfRange { label: i, n });
    }
    Ok(())
}

/// `mu1 □_i mu2`: concatenation with every cross edge labelled `i` and
/// oriented from the first ground set to the second.
pub fn box_product(i: u8, mu1: &GraphObject, mu2: &GraphObject) -> Result<GraphObject> {
    let n = mu1.n();
    if mu2.n() != n {
        return Err(Error::Dimension(format!("label bounds {} and {}", n, mu2.n())));
    }
    check_label(i, n)?;
    let (k1, k2) = (mu1.k(), mu2.k());
    GraphObject::from_fn(n, k1 + k2, |x, y| match (x < k1, y < k1) {
        (true, true) => (mu1.label(x, y), mu1.points(x, y)),
        (false, false) => (mu2.label(x - k1, y - k1), mu2.points(x - k1, y - k1)),
        _ => (i, true),
    })
}

/// The operad structure map `γ(mu; nus[0], …, nus[k-1])`.
///
/// The ground set of the result is the ordered concatenation of the ground
/// sets of `nus`.
pub fn gamma(mu: &GraphObject, nus: &[GraphObject]) -> Result<GraphObject> {
    if nus.len() != mu.k() {
        return Err(Error::Arity { expected: mu.k(), got: nus.len() });
    }
    let n = mu.n();
    if let Some(nu) = nus.iter().find(|nu| nu.n() != n) {
        return Err(Error::Dimension(format!("label bounds {} and {}", n, nu.n())));
    }
    let mut block = Vec::new();
    let mut local = Vec::new();
    for (i, nu) in nus.iter().enumerate() {
        for x in 0..nu.k() {
            block.push(i);
            local.push(x);
        }
    }
    GraphObject::from_fn(n, block.len(), |x, y| {
        let (bx, by) = (block[x], block[y]);
        if bx == by {
            let nu = &nus[bx];
            (nu.label(local[x], local[y]), nu.points(local[x], local[y]))
        } else {
            (mu.label(bx, by), mu.points(bx, by))
        }
    })
}

/// Right action: `(mu σ){x,y} = mu{σx, σy}` with orientation transported.
pub fn sigma_action(mu: &GraphObject, sigma: &Permutation) -> Result<GraphObject> {
    if sigma.len() != mu.k() {
        return Err(Error::Dimension(format!("permutation of {} points on k={}", sigma.len(), mu.k())));
    }
    GraphObject::from_fn(mu.n(), mu.k(), |x, y| {
        let (sx, sy) = (sigma.apply(x), sigma.apply(y));
        (mu.label(sx, sy), mu.points(sx, sy))
    })
}

/// Pulls `mu` back along the injection `inj: 0..m -> 0..k`.
pub fn restrict(mu: &GraphObject, inj: &[usize]) -> Result<GraphObject> {
    let mut seen = vec![false; mu.k()];
    for &i in inj {
        if i >= mu.k() || std::mem::replace(&mut seen[i], true) {
            return Err(Error::NotInjective);
        }
    }
    GraphObject::from_fn(mu.n(), inj.len(), |x, y| (mu.label(inj[x], inj[y]), mu.points(inj[x], inj[y])))
}

/// Reverses the label order, keeps orientations.
pub fn dual(mu: &GraphObject) -> GraphObject {
    let n = mu.n();
    GraphObject::from_fn(n, mu.k(), |x, y| (n + 1 - mu.label(x, y), mu.points(x, y)))
        .expect("dual preserves label range")
}

/// Maximal decomposition `mu = mu_{S1} □_i … □_i mu_{Sp}` with every block
/// carrying labels strictly above `i`.
///
/// Requires `mu` to be in the decreasing family with labels `≥ i`. Blocks are
/// returned as element lists in the order induced by `mu`.
pub fn top_decomposition(mu: &GraphObject, i: u8) -> Result<Vec<Vec<usize>>> {
    check_label(i, mu.n())?;
    let k = mu.k();
    if k <= 1 {
        return Ok(if k == 1 { vec![vec![0]] } else { Vec::new() });
    }
    if !in_family(mu, FamilyTag::K) || mu.min_label() < i {
        return Err(Error::NotInFamily(format!("MDown with labels >= {i}")));
    }
    let (mut dp, order) = Decomposer::new(mu);
    if !dp.decomposable(0, k, Mode::Down(i)) {
        return Err(Error::NotInFamily(format!("MDown with labels >= {i}")));
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    for cut in 1..k {
        if dp.cut_label(0, cut, k) == Some(i) {
            blocks.push(order[start..cut].to_vec());
            start = cut;
        }
    }
    blocks.push(order[start..].to_vec());
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::syntax::{format_object, parse_expr};

    fn obj(s: &str, n: u8) -> GraphObject {
        parse_expr(s, n).unwrap()
    }

    #[test]
    fn box_examples() {
        let p = GraphObject::trivial(2, 1);
        assert_eq!(box_product(2, &p, &p).unwrap(), obj("1[]2 2", 2));
        let b = box_product(1, &obj("1[]2 2", 2), &p).unwrap();
        assert_eq!((b.label(0, 1), b.points(0, 1)), (2, true));
        assert_eq!((b.label(0, 2), b.points(0, 2)), (1, true));
        assert_eq!((b.label(1, 2), b.points(1, 2)), (1, true));
        assert!(box_product(3, &p, &p).is_err());
    }

    #[test]
    fn gamma_reproduces_displayed_product() {
        let mu = obj("2[]1(3[]2 1)", 3);
        let nus = [obj("1[]1 2", 3), obj("1[]2 2", 3), obj("1[]3 2", 3)];
        let g = gamma(&mu, &nus).unwrap();
        assert_eq!(format_object(&g), "(3[]2 4)[]1((5[]3 6)[]2(1[]1 2))");
        assert_eq!(g, obj("(3[]2 4)[]1((5[]3 6)[]2(1[]1 2))", 3));
    }

    #[test]
    fn gamma_unit_and_arity() {
        let nu = obj("2[]1(3[]2 1)", 3);
        assert_eq!(gamma(&GraphObject::trivial(3, 1), std::slice::from_ref(&nu)).unwrap(), nu);
        assert!(matches!(gamma(&nu, std::slice::from_ref(&nu)), Err(Error::Arity { expected: 3, got: 1 })));
    }

    #[test]
    fn sigma_examples() {
        let mu = obj("1[]2 2", 2);
        assert_eq!(sigma_action(&mu, &Permutation::identity(2)).unwrap(), mu);
        assert_eq!(sigma_action(&mu, &Permutation::transposition(2, 0, 1)).unwrap(), obj("2[]2 1", 2));
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn restrict_examples() {
        let m = obj("3[]2((2[]3 6)[]1 4)[]2(1[]1 5)", 3);
        assert_eq!(restrict(&m, &[0, 1, 2, 3, 4, 5]).unwrap(), m);
        // {2,6,4} in ascending element order
        let r = restrict(&m, &[1, 3, 5]).unwrap();
        assert_eq!(r, obj("(1[]3 3)[]1 2", 3));
        assert!(restrict(&m, &[1, 1]).is_err());
        assert!(restrict(&m, &[9]).is_err());
    }

    #[test]
    fn dual_example() {
        let up = obj("3[]3((2[]1 6)[]2 4)[]3(1[]1 5)", 3);
        let down = obj("3[]1((2[]3 6)[]2 4)[]1(1[]3 5)", 3);
        assert_eq!(dual(&up), down);
        assert_eq!(dual(&down), up);
    }

    #[test]
    fn top_decomposition_examples() {
        let hi = obj("1[]3 2[]2 3", 3);
        assert_eq!(top_decomposition(&hi, 1).unwrap(), vec![vec![0, 1, 2]]);
        let split = obj("1[]1 2[]1 3", 2);
        assert_eq!(top_decomposition(&split, 1).unwrap(), vec![vec![0], vec![1], vec![2]]);
        let m = obj("3[]2((2[]3 6)[]1 4)[]2(1[]1 5)", 3);
        assert!(matches!(top_decomposition(&m, 1), Err(Error::NotInFamily(_))));
    }
}
