//! The word order permutation ring.
//!
//! Two orders are connected in the ring when one yields the other by swapping
//! a pair of adjacent constituents. The adjacency is derived from the swap
//! rule rather than hard-coded; a golden test pins down the resulting cycle
//! SOV-SVO-VSO-VOS-OVS-OSV-SOV.

use std::sync::OnceLock;

use crate::order::{Constituent, Order};

/// Errors from ring queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("distance class {0} is outside 1..=3")]
    DistanceOutOfRange(u8),
}

/// The ring as an adjacency structure over the six orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    neighbors: [[Order; 2]; 6],
}

/// Builds the permutation ring by enumerating adjacent-constituent swaps.
pub fn build_ring() -> Ring {
    let mut neighbors = [[Order::SOV; 2]; 6];
    for x in Order::ALL {
        let a = x.swap_adjacent(0);
        let b = x.swap_adjacent(1);
        debug_assert_ne!(a, b);
        // store each neighbor pair in canonical enumeration order
        let (lo, hi) = if a.index() < b.index() { (a, b) } else { (b, a) };
        neighbors[x.index()] = [lo, hi];
    }
    Ring { neighbors }
}

impl Ring {
    /// The two orders reachable from `x` by one adjacent-constituent swap.
    pub fn neighbors(&self, x: Order) -> [Order; 2] {
        self.neighbors[x.index()]
    }

    /// Shortest-path distance between `x` and `y` along ring edges.
    pub fn distance(&self, x: Order, y: Order) -> u8 {
        // breadth-first search; the graph has six vertices so depth <= 3
        let mut dist = [u8::MAX; 6];
        dist[x.index()] = 0;
        let mut frontier = vec![x];
        while let Some(v) = frontier.pop() {
            if v == y {
                return dist[v.index()];
            }
            for w in self.neighbors(v) {
                if dist[w.index()] == u8::MAX {
                    dist[w.index()] = dist[v.index()] + 1;
                    frontier.insert(0, w);
                }
            }
        }
        dist[y.index()]
    }

    /// The ring walked as a cycle starting from `start`, six vertices long.
    pub fn cycle_from(&self, start: Order) -> [Order; 6] {
        let mut cycle = [start; 6];
        let mut prev = start;
        let mut cur = self.neighbors(start)[0];
        for slot in cycle.iter_mut().skip(1) {
            *slot = cur;
            let [a, b] = self.neighbors(cur);
            let next = if a == prev { b } else { a };
            prev = cur;
            cur = next;
        }
        cycle
    }
}

fn distance_matrix() -> &'static [[u8; 6]; 6] {
    static MATRIX: OnceLock<[[u8; 6]; 6]> = OnceLock::new();
    MATRIX.get_or_init(|| {
        let ring = build_ring();
        let mut m = [[0u8; 6]; 6];
        for x in Order::ALL {
            for y in Order::ALL {
                m[x.index()][y.index()] = ring.distance(x, y);
            }
        }
        m
    })
}

/// Ring distance d(x, y): the minimum number of adjacent-constituent swaps
/// turning `x` into `y`. Always in 0..=3.
pub fn ring_distance(x: Order, y: Order) -> u8 {
    distance_matrix()[x.index()][y.index()]
}

/// Number of partners of an order at ring distance `d`: two at distances 1
/// and 2, one at distance 3.
pub fn neighbor_count(d: u8) -> Result<u8, RingError> {
    match d {
        1 | 2 => Ok(2),
        3 => Ok(1),
        other => Err(RingError::DistanceOutOfRange(other)),
    }
}

/// Per-constituent position changes between two orders and their total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Displacement {
    pub delta_s: u8,
    pub delta_v: u8,
    pub delta_o: u8,
}

impl Displacement {
    /// Total displacement: the sum of the three per-constituent changes.
    pub fn total(&self) -> u8 {
        self.delta_s + self.delta_v + self.delta_o
    }
}

/// Displacement of each constituent between `x` and `y`: the absolute
/// difference of its positions in the two orders.
pub fn displacement(x: Order, y: Order) -> Displacement {
    let delta = |c: Constituent| x.position(c).abs_diff(y.position(c)) as u8;
    Displacement {
        delta_s: delta(Constituent::S),
        delta_v: delta(Constituent::V),
        delta_o: delta(Constituent::O),
    }
}

/// One row of the distance table for a base order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceRow {
    pub partner: Order,
    pub ring_distance: u8,
    pub displacement: Displacement,
}

/// Both distance measures from `x` to every order, in canonical order.
pub fn distance_table(x: Order) -> Vec<DistanceRow> {
    Order::ALL
        .iter()
        .map(|&y| DistanceRow {
            partner: y,
            ring_distance: ring_distance(x, y),
            displacement: displacement(x, y),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    // Independent oracle: minimum number of adjacent swaps found by trying
    // every swap sequence of length <= 3.
    fn min_swaps(x: Order, y: Order) -> u8 {
        let mut layer = vec![x];
        for depth in 0u8..=3 {
            if layer.contains(&y) {
                return depth;
            }
            layer = layer
                .into_iter()
                .flat_map(|o| [o.swap_adjacent(0), o.swap_adjacent(1)])
                .collect();
        }
        panic!("orders {x} and {y} not connected within 3 swaps");
    }

    #[test]
    fn neighbors_of_sov_and_vos() {
        let ring = build_ring();
        let set = |orders: [Order; 2]| orders.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(
            set(ring.neighbors(Order::SOV)),
            set([Order::SVO, Order::OSV])
        );
        assert_eq!(
            set(ring.neighbors(Order::VOS)),
            set([Order::VSO, Order::OVS])
        );
    }

    #[test]
    fn every_vertex_has_degree_two() {
        let ring = build_ring();
        for x in Order::ALL {
            let [a, b] = ring.neighbors(x);
            assert_ne!(a, b);
            assert_ne!(a, x);
            assert_ne!(b, x);
        }
    }

    #[test]
    fn derived_cycle_matches_golden_cycle() {
        let ring = build_ring();
        let cycle = ring.cycle_from(Order::SOV);
        let golden = [
            Order::SOV,
            Order::SVO,
            Order::VSO,
            Order::VOS,
            Order::OVS,
            Order::OSV,
        ];
        let reversed = [
            Order::SOV,
            Order::OSV,
            Order::OVS,
            Order::VOS,
            Order::VSO,
            Order::SVO,
        ];
        assert!(
            cycle == golden || cycle == reversed,
            "cycle {cycle:?} is not the expected ring"
        );
    }

    #[test]
    fn ring_is_a_single_cycle() {
        let ring = build_ring();
        let cycle = ring.cycle_from(Order::SOV);
        let distinct: BTreeSet<_> = cycle.iter().collect();
        assert_eq!(distinct.len(), 6, "walk must visit every order once");
        // the walk closes back on the start
        let last = cycle[5];
        assert!(ring.neighbors(last).contains(&Order::SOV));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(ring_distance(Order::SOV, Order::SVO), 1);
        assert_eq!(ring_distance(Order::SOV, Order::OVS), 2);
        assert_eq!(ring_distance(Order::SOV, Order::VOS), 3);
        for x in Order::ALL {
            assert_eq!(ring_distance(x, x), 0);
        }
    }

    #[test]
    fn distance_is_symmetric_and_equals_min_swap_count() {
        for x in Order::ALL {
            for y in Order::ALL {
                let d = ring_distance(x, y);
                assert_eq!(d, ring_distance(y, x));
                assert!(d <= 3);
                assert_eq!(d, min_swaps(x, y), "({x}, {y})");
            }
        }
    }

    #[test]
    fn neighbor_count_values() {
        assert_eq!(neighbor_count(1), Ok(2));
        assert_eq!(neighbor_count(2), Ok(2));
        assert_eq!(neighbor_count(3), Ok(1));
        assert_eq!(neighbor_count(0), Err(RingError::DistanceOutOfRange(0)));
        assert_eq!(neighbor_count(4), Err(RingError::DistanceOutOfRange(4)));
        let total: u8 = (1..=3).map(|d| neighbor_count(d).unwrap()).sum();
        assert_eq!(total, 5);
    }

    #[test]
    fn neighbor_count_matches_actual_partner_counts() {
        for x in Order::ALL {
            for d in 1u8..=3 {
                let actual = Order::ALL
                    .iter()
                    .filter(|&&y| ring_distance(x, y) == d)
                    .count() as u8;
                assert_eq!(actual, neighbor_count(d).unwrap(), "x={x} d={d}");
            }
        }
    }

    #[test]
    fn displacement_examples() {
        // SOV vs SVO: S fixed, O and V trade places
        let d = displacement(Order::SOV, Order::SVO);
        assert_eq!((d.delta_s, d.delta_o, d.delta_v), (0, 1, 1));
        assert_eq!(d.total(), 2);

        // SOV vs VOS: S and V jump across, O fixed
        let d = displacement(Order::SOV, Order::VOS);
        assert_eq!((d.delta_s, d.delta_v, d.delta_o), (2, 2, 0));
        assert_eq!(d.total(), 4);

        for x in Order::ALL {
            assert_eq!(displacement(x, x).total(), 0);
        }
    }

    #[test]
    fn displacement_total_four_at_distance_two() {
        // zxy-pattern partner of any base: total displacement 4, ring distance 2
        let d = displacement(Order::SOV, Order::VSO);
        assert_eq!(d.total(), 4);
        assert_eq!(ring_distance(Order::SOV, Order::VSO), 2);
    }

    #[test]
    fn distance_table_multiset_is_base_independent() {
        let expected: Vec<(u8, u8)> = vec![(0, 0), (2, 1), (2, 1), (4, 2), (4, 2), (4, 3)];
        for x in Order::ALL {
            let mut pairs: Vec<(u8, u8)> = distance_table(x)
                .iter()
                .map(|row| (row.displacement.total(), row.ring_distance))
                .collect();
            pairs.sort_unstable();
            assert_eq!(pairs, expected, "base {x}");
        }
    }

    #[test]
    fn displacement_and_distance_correspond_over_all_pairs() {
        for x in Order::ALL {
            for y in Order::ALL {
                let delta = displacement(x, y).total();
                let d = ring_distance(x, y);
                assert_eq!(delta, displacement(y, x).total());
                assert_eq!(delta % 2, 0);
                match d {
                    0 => assert_eq!(delta, 0),
                    1 => assert_eq!(delta, 2),
                    2 | 3 => assert_eq!(delta, 4),
                    _ => unreachable!(),
                }
            }
        }
    }
}
