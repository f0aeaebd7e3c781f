//! Shared test oracles, independent of the library's computation paths.

use cremona_core::rat::{int, Rat};
use cremona_core::ring::{DivisorClass, VarietyDescriptor};

/// Triple product of basis elements by explicit case analysis on the
/// intersection table: index 0 is H, index i >= 1 is E_{i-1}.
///
///   H.H.H = H.H^2 = 1
///   E_i^3 = E_i.(-L_i) = +1
///   every mixed product vanishes (H.H.E_i hits E_i.H^2 = 0,
///   H.E_i.E_i hits H.L_i = 0, distinct E's never meet).
pub fn basis_triple(i: usize, j: usize, k: usize) -> Rat {
    if i == j && j == k {
        int(1)
    } else {
        int(0)
    }
}

/// Brute-force (N+1)^3 expansion of the triple product over basis indices.
pub fn triple_oracle(
    v: &VarietyDescriptor,
    x: &DivisorClass,
    y: &DivisorClass,
    z: &DivisorClass,
) -> Rat {
    let rank = v.rank();
    let (xc, yc, zc) = (x.coords(), y.coords(), z.coords());
    assert_eq!(xc.len(), rank);
    assert_eq!(yc.len(), rank);
    assert_eq!(zc.len(), rank);
    let mut acc = int(0);
    for i in 0..rank {
        for j in 0..rank {
            for k in 0..rank {
                acc += &xc[i] * &yc[j] * &zc[k] * basis_triple(i, j, k);
            }
        }
    }
    acc
}
