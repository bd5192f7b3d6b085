//! Inclusive degree windows, written `lo:hi` on the command line.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window {lo}:{hi}");
        Window { lo, hi }
    }

    pub fn degrees(&self) -> impl DoubleEndedIterator<Item = i64> + Clone {
        self.lo..=self.hi
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The window grown by `margin` degrees on both sides.
    pub fn widen(&self, margin: i64) -> Self {
        Window::new(self.lo - margin, self.hi + margin)
    }

    /// Degrees `-2 - n` for `n` in this window.
    pub fn dual(&self) -> Self {
        Window::new(-2 - self.hi, -2 - self.lo)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid window `{0}`: expected lo:hi with lo <= hi")]
pub struct WindowParseError(pub String);

impl FromStr for Window {
    type Err = WindowParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || WindowParseError(s.to_string());
        let (lo, hi) = s.split_once(':').ok_or_else(err)?;
        let lo: i64 = lo.trim().parse().map_err(|_| err())?;
        let hi: i64 = hi.trim().parse().map_err(|_| err())?;
        if lo > hi {
            return Err(err());
        }
        Ok(Window { lo, hi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_negative_bounds() {
        assert_eq!("-8:8".parse::<Window>().unwrap(), Window::new(-8, 8));
        assert!("3:1".parse::<Window>().is_err());
        assert!("3".parse::<Window>().is_err());
        assert_eq!(Window::new(-8, 8).to_string(), "-8:8");
        assert_eq!(Window::new(-1, 4).dual(), Window::new(-6, -1));
    }
}
