use equigraph::graphs::{certified_spectrum, complement, regularity, Graph};
use equigraph::spectra::{check_equienergetic, complement_spectrum, energy};

/// Cycle on `n` vertices with a loop at every vertex: `A + I`, degree 3.
fn looped_cycle(n: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..n).map(|i| (i, i)));
    Graph::from_edges(n, &edges, true).unwrap()
}

#[test]
fn looped_complement_matches_construction() {
    for n in [4, 5, 6, 8] {
        let g = looped_cycle(n);
        let k = regularity(&g).unwrap() as i64;
        assert_eq!(k, 3);
        let s = certified_spectrum(&g).unwrap();
        let numeric = certified_spectrum(&complement(&g, true)).unwrap();
        let exact = complement_spectrum(&s, k, true);
        assert_eq!(
            exact.principal_eig().cmp_int(n as i64 - 3),
            Some(std::cmp::Ordering::Equal)
        );
        assert!(
            equigraph::graphs::spectra_isospectral(&numeric, &exact),
            "n={n}: {numeric} vs {exact}"
        );
    }
}

#[test]
fn looped_criterion_is_n_equals_2k() {
    // n = 6 = 2k: J - A has principal 3 and the same remaining moduli.
    let g = looped_cycle(6);
    let s = certified_spectrum(&g).unwrap();
    let r = check_equienergetic(&s, 3, true).unwrap();
    assert!(r.equal);
    assert_eq!(
        energy(&certified_spectrum(&complement(&g, true)).unwrap()),
        r.energy
    );
    // n = 7 = 2k + 1 is not enough once loops are allowed.
    let g = looped_cycle(7);
    let s = certified_spectrum(&g).unwrap();
    assert!(!check_equienergetic(&s, 3, true).unwrap().equal);
}

#[test]
fn loopless_complement_matches_construction() {
    let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], false).unwrap();
    let s = certified_spectrum(&g).unwrap();
    let numeric = certified_spectrum(&complement(&g, false)).unwrap();
    assert!(equigraph::graphs::spectra_isospectral(
        &numeric,
        &complement_spectrum(&s, 2, false)
    ));
}
