use std::collections::BTreeSet;

/// Smallest list of `sets` (by index) whose union is `0..universe`, or
/// `None` when even all of them miss an element. Exact branch and bound:
/// branch on the uncovered element with fewest candidates, prune with
/// `chosen + ceil(uncovered / largest set)`. Ties go to the
/// lexicographically smallest index list.
pub fn minimum_set_cover(universe: usize, sets: &[BTreeSet<usize>]) -> Option<Vec<usize>> {
    let covering: Vec<Vec<usize>> =
        (0..universe).map(|e| (0..sets.len()).filter(|&i| sets[i].contains(&e)).collect()).collect();
    if covering.iter().any(Vec::is_empty) {
        return None;
    }
    let greedy = greedy_cover(universe, sets);
    let mut best = greedy;
    let largest = sets.iter().map(BTreeSet::len).max().unwrap_or(1).max(1);
    let mut chosen = Vec::new();
    let mut count = vec![0usize; universe];
    search(sets, &covering, largest, &mut chosen, &mut count, &mut best);
    best.sort_unstable();
    Some(best)
}

fn greedy_cover(universe: usize, sets: &[BTreeSet<usize>]) -> Vec<usize> {
    let mut covered = vec![false; universe];
    let mut left = universe;
    let mut out = Vec::new();
    while left > 0 {
        let (i, _) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.iter().filter(|&&e| !covered[e]).count()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("coverable");
        for &e in &sets[i] {
            if !covered[e] {
                covered[e] = true;
                left -= 1;
            }
        }
        out.push(i);
    }
    out
}

fn search(
    sets: &[BTreeSet<usize>],
    covering: &[Vec<usize>],
    largest: usize,
    chosen: &mut Vec<usize>,
    count: &mut [usize],
    best: &mut Vec<usize>,
) {
    let uncovered: Vec<usize> = (0..count.len()).filter(|&e| count[e] == 0).collect();
    if uncovered.is_empty() {
        let mut c = chosen.clone();
        c.sort_unstable();
        let mut b = best.clone();
        b.sort_unstable();
        if c.len() < b.len() || (c.len() == b.len() && c < b) {
            *best = c;
        }
        return;
    }
    let bound = chosen.len() + uncovered.len().div_ceil(largest);
    if bound > best.len() {
        return;
    }
    let &e = uncovered.iter().min_by_key(|&&e| (covering[e].len(), e)).unwrap();
    for &i in &covering[e] {
        if chosen.contains(&i) {
            continue;
        }
        chosen.push(i);
        for &x in &sets[i] {
            count[x] += 1;
        }
        search(sets, covering, largest, chosen, count, best);
        for &x in &sets[i] {
            count[x] -= 1;
        }
        chosen.pop();
    }
}
