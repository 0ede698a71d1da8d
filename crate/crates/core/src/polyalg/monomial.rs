use std::cmp::Ordering;
use std::fmt;

/// A monomial `t^m * x1^a1 * ... * xn^an`.
///
/// Ordering is graded by total exponent (`m + a1 + ... + an`), ties broken
/// lexicographically with `t` as the most significant variable followed by
/// `x1, x2, ...`. Rendering walks this order from the top, so `t` factors
/// lead within a degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    x: Vec<u32>,
    t: u32,
}

impl Monomial {
    pub fn new(x: Vec<u32>, t: u32) -> Self {
        Monomial { x, t }
    }

    /// The constant monomial `1` in `n` spatial variables.
    pub fn one(n: usize) -> Self {
        Monomial { x: vec![0; n], t: 0 }
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.x
    }

    pub fn t_exponent(&self) -> u32 {
        self.t
    }

    pub fn dimension(&self) -> usize {
        self.x.len()
    }

    /// Sum of the spatial exponents.
    pub fn space_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    /// `4 * t_exponent + space_degree`, the degree under the scaling `t ~ |x|^4`.
    pub fn biparabolic_degree(&self) -> u32 {
        4 * self.t + self.space_degree()
    }

    pub fn total_degree(&self) -> u32 {
        self.t + self.space_degree()
    }

    pub fn is_constant(&self) -> bool {
        self.t == 0 && self.x.iter().all(|&e| e == 0)
    }

    pub(crate) fn product(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.x.len(), other.x.len());
        Monomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            t: self.t + other.t,
        }
    }

    pub(crate) fn with_t(&self, t: u32) -> Monomial {
        Monomial { x: self.x.clone(), t }
    }

    pub(crate) fn with_x(&self, i: usize, e: u32) -> Monomial {
        let mut x = self.x.clone();
        x[i] = e;
        Monomial { x, t: self.t }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then(self.t.cmp(&other.t))
            .then_with(|| self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        match self.t {
            0 => {}
            1 => factors.push("t".to_string()),
            e => factors.push(format!("t^{e}")),
        }
        for (i, &e) in self.x.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{}", i + 1)),
                e => factors.push(format!("x{}^{e}", i + 1)),
            }
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        let m = Monomial::new(vec![2, 0], 1);
        assert_eq!(m.space_degree(), 2);
        assert_eq!(m.biparabolic_degree(), 6);
        assert_eq!(m.total_degree(), 3);
        assert_eq!(Monomial::one(3).biparabolic_degree(), 0);
    }

    #[test]
    fn order_is_graded_then_t_major() {
        let x8 = Monomial::new(vec![8], 0);
        let tx4 = Monomial::new(vec![4], 1);
        let t2 = Monomial::new(vec![0], 2);
        assert!(x8 > tx4 && tx4 > t2);
        let tx = Monomial::new(vec![1, 0], 1);
        let xx = Monomial::new(vec![2, 0], 0);
        assert!(tx > xx);
        assert!(Monomial::new(vec![2, 0], 0) > Monomial::new(vec![1, 1], 0));
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(vec![4, 0, 1], 2).to_string(), "t^2*x1^4*x3");
        assert_eq!(Monomial::one(2).to_string(), "1");
    }
}
