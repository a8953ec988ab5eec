use std::fmt;

/// A multi-weight: one non-negative integer per weight axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<u32>);

impl Weight {
    pub fn zero(axes: usize) -> Self {
        Weight(vec![0; axes])
    }

    pub fn single(w: u32) -> Self {
        Weight(vec![w])
    }

    pub fn axes(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &Weight) -> bool {
        debug_assert_eq!(self.axes(), other.axes());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn join(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Appends one more axis with the given value.
    pub fn extended(&self, last: u32) -> Weight {
        let mut v = self.0.clone();
        v.push(last);
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Degree of a weighted polynomial: `None` is the bottom element, the degree of zero.
pub type Degree = Option<Weight>;

/// `d <= w` with bottom below everything.
pub fn degree_le(d: &Degree, w: &Weight) -> bool {
    match d {
        None => true,
        Some(d) => d.leq(w),
    }
}

pub fn degree_string(d: &Degree) -> String {
    match d {
        None => "bottom".to_string(),
        Some(w) => w.to_string(),
    }
}
