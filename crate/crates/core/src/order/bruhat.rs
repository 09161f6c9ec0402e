//! Ordinary Bruhat order on the affine symmetric group.

use crate::affine::AffinePerm;

/// `u ≤ w` by the lifting property: for a right descent `s` of `w`,
/// `u ≤ w` iff `min(u, us) ≤ ws`.
pub fn bruhat_leq(u: &AffinePerm, w: &AffinePerm) -> bool {
    assert_eq!(u.n(), w.n(), "periods differ");
    let mut u = u.clone();
    let mut w = w.clone();
    loop {
        let (lu, lw) = (u.length(), w.length());
        if lu > lw {
            return false;
        }
        if lw == 0 {
            return u.is_identity();
        }
        if lu == 0 {
            return true;
        }
        let s = w.right_descents()[0] as i64;
        if u.apply(s) > u.apply(s + 1) {
            u.right_mul_simple(s);
        }
        w.right_mul_simple(s);
    }
}
