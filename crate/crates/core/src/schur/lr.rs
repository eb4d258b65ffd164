use crate::schur::Partition;

/// Littlewood–Richardson coefficient `c^λ_{μν}` by enumerating LR tableaux of
/// shape `λ/μ` and content `ν`: semistandard fillings whose reverse reading word
/// (rows top to bottom, each right to left) is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) {
        return 0;
    }
    let cells: Vec<(usize, usize)> = (0..lambda.len())
        .flat_map(|r| (mu.part(r)..lambda.part(r)).rev().map(move |c| (r, c)))
        .collect();
    let mut filling = vec![vec![0usize; lambda.part(0)]; lambda.len()];
    let mut counts = vec![0usize; nu.len()];
    let mut total = 0;
    fill(0, &cells, lambda, mu, nu, &mut filling, &mut counts, &mut total);
    total
}

#[allow(clippy::too_many_arguments)]
fn fill(
    k: usize,
    cells: &[(usize, usize)],
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    filling: &mut Vec<Vec<usize>>,
    counts: &mut Vec<usize>,
    total: &mut u64,
) {
    if k == cells.len() {
        *total += 1;
        return;
    }
    let (r, c) = cells[k];
    for v in 0..nu.len() {
        if counts[v] == nu.part(v) {
            continue;
        }
        // lattice condition on the reading word so far
        if v > 0 && counts[v] + 1 > counts[v - 1] {
            continue;
        }
        // rows weakly increase: the cell to the right was filled already
        if c + 1 < lambda.part(r) && filling[r][c + 1] < v {
            continue;
        }
        // columns strictly increase
        if r > 0 && c >= mu.part(r - 1) && filling[r - 1][c] >= v {
            continue;
        }
        filling[r][c] = v;
        counts[v] += 1;
        fill(k + 1, cells, lambda, mu, nu, filling, counts, total);
        counts[v] -= 1;
    }
}
