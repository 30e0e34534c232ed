use crate::formulas::{max_parts_bound, Family};

/// Largest `n` for which the coloring constraints allow the `n`-th member of
/// `family` to have `k` thresholds.
pub fn max_groups_for_thresholds(family: Family, k: u64) -> u64 {
    let size = family.clique_size();
    let bound = |m: u64| max_parts_bound(m, size).expect("size 3 or 4");
    if family.is_multipartite() {
        if k.is_multiple_of(2) {
            if k == 0 {
                1
            } else {
                2 + bound(k / 2 - 1)
            }
        } else {
            1 + bound(k / 2)
        }
    } else if k % 2 == 1 {
        1 + bound(k.div_ceil(2) - 1)
    } else {
        bound(k / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::theta;

    #[test]
    fn matches_the_closed_forms() {
        for family in Family::ALL {
            for k in 1..40 {
                let best = (family.min_n()..2000)
                    .filter(|&n| theta(family, n).unwrap().theta <= k)
                    .max();
                if let Some(best) = best {
                    assert_eq!(max_groups_for_thresholds(family, k), best, "{family} k={k}");
                }
            }
        }
    }
}
