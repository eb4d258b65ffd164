use crate::schur::FunctorSpec;

/// `q ⋖ p`: the irreducible decompositions differ, and at the highest degree where
/// they differ the degree-`d` part of `q` is a quotient of (by semisimplicity, a
/// sub-multiset of) the degree-`d` part of `p`.
pub fn lessdot(q: &FunctorSpec, p: &FunctorSpec) -> bool {
    let qp = q.irreducible_profile();
    let pp = p.irreducible_profile();
    let top = qp.keys().chain(pp.keys()).copied().max().unwrap_or(0);
    for d in (1..=top).rev() {
        let qd = qp.get(&d).cloned().unwrap_or_default();
        let pd = pp.get(&d).cloned().unwrap_or_default();
        if qd == pd {
            continue;
        }
        return qd.iter().all(|(l, m)| pd.get(l).copied().unwrap_or(0) >= *m);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> FunctorSpec {
        s.parse().unwrap()
    }

    #[test]
    fn introduction_example() {
        assert!(lessdot(&spec("S1^2+E2+S3"), &spec("S2+S3+[2,1]")));
        assert!(!lessdot(&spec("S2+S3+[2,1]"), &spec("S1^2+E2+S3")));
    }

    #[test]
    fn irreflexive_and_degree_drop() {
        let s = spec("S2+E3");
        assert!(!lessdot(&s, &s));
        assert!(lessdot(&spec("S2"), &spec("S3")));
        assert!(!lessdot(&spec("S3"), &spec("S2")));
    }

    #[test]
    fn tensor_is_expanded() {
        // T2 = S2 + E2
        assert!(!lessdot(&spec("T2"), &spec("S2+E2")));
        assert!(lessdot(&spec("S2"), &spec("T2")));
    }
}
