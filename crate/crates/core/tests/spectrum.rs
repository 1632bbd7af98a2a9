use std::collections::BTreeSet;

use cyclowitt::spectrum::{
    all_ideals, ideal_generated, is_homomorphism, preimage, spec, FiniteCRig,
};

/// `Z/mn → Z/n` is a rig map, and pulling primes back along it is a
/// continuous map `Spec(Z/n) → Spec(Z/mn)`.
#[test]
fn pullback_along_reduction_is_continuous() {
    for (m, n) in [(2, 3), (2, 6), (3, 4), (5, 2), (4, 3)] {
        let big = FiniteCRig::zmod(m * n).unwrap();
        let small = FiniteCRig::zmod(n).unwrap();
        let map: Vec<usize> = (0..big.size()).map(|x| x % n as usize).collect();
        assert!(is_homomorphism(&big, &small, &map));

        let (sb, ss) = (spec(&big), spec(&small));
        let image: Vec<usize> = ss
            .primes
            .iter()
            .map(|q| {
                let p = preimage(&map, q);
                sb.primes
                    .iter()
                    .position(|x| *x == p)
                    .expect("pullback of a prime is prime")
            })
            .collect();
        for b in all_ideals(&big) {
            let closed = sb.closed_set(&b);
            let pulled: BTreeSet<usize> = (0..ss.len())
                .filter(|&i| closed.contains(&image[i]))
                .collect();
            let pushed: Vec<usize> = b.elements().iter().map(|&x| map[x]).collect();
            assert_eq!(
                pulled,
                ss.closed_set(&ideal_generated(&small, &pushed)),
                "Z/{} -> Z/{n}",
                m * n
            );
        }
    }
}
