//! Best star center over a vertex subset.

use crate::instance::CostFn;

/// Total power of the star over `members` centered at `center`: every leaf
/// pays its edge, the center pays its longest edge.
pub fn star_power<C: CostFn + ?Sized>(costs: &C, members: &[usize], center: usize) -> f64 {
    let mut leaves = 0.0;
    let mut reach = 0.0f64;
    for &v in members {
        if v != center {
            let c = costs.cost(center, v);
            leaves += c;
            reach = reach.max(c);
        }
    }
    leaves + reach
}

/// The member of `members` whose star over `members` has minimum total
/// power, with its score. Ties go to the smaller vertex index; an empty
/// subset has no center.
pub fn find_best_star_center<C: CostFn + ?Sized>(costs: &C, members: &[usize]) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for &u in members {
        let score = star_power(costs, members, u);
        best = match best {
            Some((b, s)) if s < score || (s == score && b < u) => Some((b, s)),
            _ => Some((u, score)),
        };
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Instance;

    #[test]
    fn middle_of_three_collinear_points() {
        let inst = Instance::from_coords(&[(0.0, 0.0), (0.5, 0.0), (1.0, 0.0)]).unwrap();
        let (c, s) = find_best_star_center(&inst, &[0, 1, 2]).unwrap();
        assert_eq!(c, 1);
        assert_eq!(s, 0.75);
        assert_eq!(star_power(&inst, &[0, 1, 2], 0), 2.25);
        assert_eq!(star_power(&inst, &[0, 1, 2], 2), 2.25);
    }

    #[test]
    fn degenerate_subsets() {
        let inst = Instance::from_coords(&[(0.0, 0.0), (0.5, 0.0)]).unwrap();
        assert_eq!(find_best_star_center(&inst, &[1]), Some((1, 0.0)));
        assert_eq!(find_best_star_center(&inst, &[]), None);
    }

    #[test]
    fn ties_prefer_smaller_index() {
        // the two endpoints of a segment score identically
        let inst = Instance::from_coords(&[(0.9, 0.1), (0.1, 0.1)]).unwrap();
        assert_eq!(find_best_star_center(&inst, &[1, 0]).unwrap().0, 0);
    }

    mod props {
        use super::super::*;
        use crate::instance::{Instance, Point};
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn matches_exhaustive_scan(seed in any::<u64>(), mask in 1u32..(1 << 12)) {
                let inst = Instance::generate_uniform(12, seed).unwrap();
                let members: Vec<usize> = (0..12).filter(|i| mask >> i & 1 == 1).collect();
                let (c, s) = find_best_star_center(&inst, &members).unwrap();
                // brute force: direct per-candidate evaluation
                let mut best = (usize::MAX, f64::INFINITY);
                for &u in &members {
                    let leaves: f64 = members.iter().filter(|&&v| v != u).map(|&v| inst.cost(u, v)).sum();
                    let reach = members.iter().filter(|&&v| v != u).map(|&v| inst.cost(u, v)).fold(0.0, f64::max);
                    if leaves + reach < best.1 {
                        best = (u, leaves + reach);
                    }
                }
                prop_assert_eq!(c, best.0);
                prop_assert!((s - best.1).abs() <= 1e-12);
            }

            #[test]
            fn translation_keeps_center(seed in any::<u64>(), dx in -0.5f64..0.5, dy in -0.5f64..0.5) {
                let inst = Instance::generate_uniform(10, seed).unwrap();
                let shifted = Instance::new(inst.points().iter().map(|p| Point::new(p.x + dx, p.y + dy)).collect()).unwrap();
                let all: Vec<usize> = (0..10).collect();
                let a = find_best_star_center(&inst, &all).unwrap();
                let b = find_best_star_center(&shifted, &all).unwrap();
                prop_assert_eq!(a.0, b.0);
            }
        }
    }
}
