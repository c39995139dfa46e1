//! The six orderings of subject, verb and object.

use std::fmt;
use std::str::FromStr;

/// A token that is not one of the six order spellings.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown order token `{token}` (expected one of SOV, SVO, VSO, VOS, OVS, OSV)")]
pub struct ParseOrderError {
    pub token: String,
}

/// One of the three clause constituents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constituent {
    S,
    V,
    O,
}

impl Constituent {
    pub const ALL: [Constituent; 3] = [Constituent::S, Constituent::V, Constituent::O];
}

impl fmt::Display for Constituent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constituent::S => write!(f, "S"),
            Constituent::V => write!(f, "V"),
            Constituent::O => write!(f, "O"),
        }
    }
}

/// An ordering of S, V and O.
///
/// Exactly six orders exist. The enumeration order below is the canonical
/// one used for tables, priors and serialized files; it also happens to walk
/// the permutation ring (each order differs from the next by one swap of
/// adjacent constituents).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    SOV,
    SVO,
    VSO,
    VOS,
    OVS,
    OSV,
}

impl Order {
    /// All six orders in canonical enumeration order.
    pub const ALL: [Order; 6] = [
        Order::SOV,
        Order::SVO,
        Order::VSO,
        Order::VOS,
        Order::OVS,
        Order::OSV,
    ];

    /// The constituents of this order, first to last.
    pub fn constituents(self) -> [Constituent; 3] {
        use Constituent::{O, S, V};
        match self {
            Order::SOV => [S, O, V],
            Order::SVO => [S, V, O],
            Order::VSO => [V, S, O],
            Order::VOS => [V, O, S],
            Order::OVS => [O, V, S],
            Order::OSV => [O, S, V],
        }
    }

    /// Position (0, 1 or 2) of a constituent within this order.
    pub fn position(self, c: Constituent) -> usize {
        self.constituents()
            .iter()
            .position(|&x| x == c)
            .expect("every order contains every constituent")
    }

    /// Index of this order within [`Order::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Order> {
        Order::ALL.get(i).copied()
    }

    fn from_constituents(cs: [Constituent; 3]) -> Order {
        *Order::ALL
            .iter()
            .find(|o| o.constituents() == cs)
            .expect("any permutation of S, V, O is one of the six orders")
    }

    /// The order obtained by swapping the constituents at positions
    /// `pos` and `pos + 1`.
    pub fn swap_adjacent(self, pos: usize) -> Order {
        assert!(pos < 2, "adjacent swap position must be 0 or 1");
        let mut cs = self.constituents();
        cs.swap(pos, pos + 1);
        Order::from_constituents(cs)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.constituents();
        write!(f, "{}{}{}", cs[0], cs[1], cs[2])
    }
}

impl FromStr for Order {
    type Err = ParseOrderError;

    /// Parses a three-letter order token, case-insensitively.
    fn from_str(s: &str) -> Result<Order, ParseOrderError> {
        let upper = s.trim().to_ascii_uppercase();
        Order::ALL
            .iter()
            .find(|o| o.to_string() == upper)
            .copied()
            .ok_or_else(|| ParseOrderError {
                token: s.to_string(),
            })
    }
}
