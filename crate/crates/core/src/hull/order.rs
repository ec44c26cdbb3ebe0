use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::Point;

/// How the input points are fed to the incremental algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InsertionOrder {
    /// Input order.
    Given,
    /// Uniform random permutation from a ChaCha8 stream seeded with the value.
    Random(u64),
    /// Ascending coordinate-lexicographic order, ties by index.
    Lexicographic,
}

impl InsertionOrder {
    pub fn permutation(&self, points: &[Point]) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..points.len()).collect();
        match *self {
            InsertionOrder::Given => {}
            InsertionOrder::Random(seed) => {
                idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            }
            InsertionOrder::Lexicographic => {
                idx.sort_by(|&a, &b| points[a].coords().cmp(points[b].coords()).then(a.cmp(&b)));
            }
        }
        idx
    }
}

impl fmt::Display for InsertionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InsertionOrder::Given => f.write_str("given"),
            InsertionOrder::Random(seed) => write!(f, "random({seed})"),
            InsertionOrder::Lexicographic => f.write_str("lex"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations() {
        let pts: Vec<Point> =
            [[2, 0], [1, 5], [1, 2], [0, 9]].iter().map(|c| Point::from_ints(c)).collect();
        assert_eq!(InsertionOrder::Given.permutation(&pts), [0, 1, 2, 3]);
        assert_eq!(InsertionOrder::Lexicographic.permutation(&pts), [3, 2, 1, 0]);
        let mut r = InsertionOrder::Random(7).permutation(&pts);
        assert_eq!(r, InsertionOrder::Random(7).permutation(&pts));
        r.sort_unstable();
        assert_eq!(r, [0, 1, 2, 3]);
    }
}
