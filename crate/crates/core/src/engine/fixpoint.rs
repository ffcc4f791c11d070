//! Grounded labelling of a defeat graph.
//!
//! A candidate is `in` once all its attackers are `out`, and `out` once some
//! `in` candidate attacks it. Whatever is left when nothing changes is
//! `undecided`. Survivors are the candidates not labelled `out`.

use std::collections::BTreeSet;

use crate::verdict::Label;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    pub labels: Vec<Label>,
    pub survivors: Vec<usize>,
    /// Number of rounds in which some candidate became `in`.
    pub rounds: usize,
}

/// Labels `n` nodes given `(attacker, victim)` pairs. Duplicate pairs (one
/// pair defeated under several principles) count once.
///
/// Runs in rounds: each round promotes the current frontier to `in`, knocks
/// out its victims, and collects the nodes whose last live attacker just
/// went out as the next frontier.
pub fn surviving<I>(n: usize, attacks: I) -> Labelling
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let pairs: BTreeSet<(usize, usize)> = attacks.into_iter().collect();
    let mut victims: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut live_attackers = vec![0usize; n];
    for &(a, v) in &pairs {
        victims[a].push(v);
        live_attackers[v] += 1;
    }

    let mut labels: Vec<Option<Label>> = vec![None; n];
    let mut frontier: Vec<usize> = (0..n).filter(|&i| live_attackers[i] == 0).collect();
    let mut rounds = 0;

    while !frontier.is_empty() {
        rounds += 1;
        for &i in &frontier {
            labels[i] = Some(Label::In);
        }
        let mut next = Vec::new();
        for &i in &frontier {
            for &v in &victims[i] {
                if labels[v].is_some() {
                    continue;
                }
                labels[v] = Some(Label::Out);
                for &w in &victims[v] {
                    if labels[w].is_none() {
                        live_attackers[w] -= 1;
                        if live_attackers[w] == 0 {
                            next.push(w);
                        }
                    }
                }
            }
        }
        // A node reaching zero may since have been knocked out this round.
        next.retain(|&w| labels[w].is_none());
        next.sort_unstable();
        next.dedup();
        frontier = next;
    }

    let labels: Vec<Label> = labels
        .into_iter()
        .map(|l| l.unwrap_or(Label::Undecided))
        .collect();
    let survivors = (0..n).filter(|&i| labels[i].survives()).collect();
    Labelling {
        labels,
        survivors,
        rounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Label::*;

    #[test]
    fn chain() {
        let l = surviving(3, [(0, 1), (1, 2)]);
        assert_eq!(l.labels, vec![In, Out, In]);
        assert_eq!(l.survivors, vec![0, 2]);
    }

    #[test]
    fn two_cycle_is_undecided() {
        let l = surviving(2, [(0, 1), (1, 0)]);
        assert_eq!(l.labels, vec![Undecided, Undecided]);
        assert_eq!(l.survivors, vec![0, 1]);
        assert_eq!(l.rounds, 0);
    }

    #[test]
    fn edgeless() {
        let l = surviving(3, []);
        assert_eq!(l.labels, vec![In, In, In]);
        assert_eq!(l.rounds, 1);
    }

    #[test]
    fn cycle_broken_from_outside() {
        // 0 attacks 1; 1 and 2 attack each other.
        let l = surviving(3, [(0, 1), (1, 2), (2, 1)]);
        assert_eq!(l.labels, vec![In, Out, In]);
    }

    #[test]
    fn self_attack_stays_undecided() {
        let l = surviving(2, [(0, 0), (0, 1)]);
        assert_eq!(l.labels, vec![Undecided, Undecided]);
    }

    /// Direct transcription of the labelling rules, rescanning everything
    /// until nothing changes.
    fn rescan(n: usize, edges: &[(usize, usize)]) -> (Vec<Label>, usize) {
        let mut labels: Vec<Option<Label>> = vec![None; n];
        let mut iterations = 0;
        loop {
            let mut changed = false;
            for i in 0..n {
                if labels[i].is_none()
                    && edges
                        .iter()
                        .filter(|(_, v)| *v == i)
                        .all(|(a, _)| labels[*a] == Some(Out))
                {
                    labels[i] = Some(In);
                    changed = true;
                }
            }
            for i in 0..n {
                if labels[i].is_none()
                    && edges.iter().any(|(a, v)| *v == i && labels[*a] == Some(In))
                {
                    labels[i] = Some(Out);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            iterations += 1;
        }
        (
            labels.into_iter().map(|l| l.unwrap_or(Undecided)).collect(),
            iterations,
        )
    }

    fn arb_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (1usize..9)
            .prop_flat_map(|n| (Just(n), proptest::collection::vec((0..n, 0..n), 0..(n * n))))
    }

    proptest! {
        #[test]
        fn matches_rescan_and_terminates_quickly((n, edges) in arb_graph()) {
            let l = surviving(n, edges.iter().copied());
            let (expected, iterations) = rescan(n, &edges);
            prop_assert_eq!(&l.labels, &expected);
            prop_assert!(l.rounds <= n);
            prop_assert!(iterations <= n);
        }

        #[test]
        fn order_independent(
            (n, edges) in arb_graph(),
            seed in any::<u64>(),
        ) {
            // Relabel nodes with a permutation and shuffle the edge list.
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let mut moved: Vec<(usize, usize)> =
                edges.iter().map(|&(a, v)| (perm[a], perm[v])).collect();
            moved.reverse();
            let base = surviving(n, edges.iter().copied());
            let permuted = surviving(n, moved);
            for i in 0..n {
                prop_assert_eq!(base.labels[i], permuted.labels[perm[i]]);
            }
        }
    }
}
