//! Group embeddings into the plane Cremona group: Baumslag–Solitar verdicts
//! and representations of GL(2, Q).

pub mod bs;
pub mod gl2q;

pub use bs::{bs_check, BsVerdict, Verdict};
pub use gl2q::{Character, Gl2qEmbedding, Gl2qReport, Injectivity, QMat};

use crate::cremap::AffineBirMap;
use crate::error::Result;

/// f^e by repeated squaring; `inv` is used for negative exponents.
pub(crate) fn affine_pow(f: &AffineBirMap, inv: &AffineBirMap, e: i64) -> Result<AffineBirMap> {
    let mut base = if e < 0 { inv.clone() } else { f.clone() };
    let mut e = e.unsigned_abs();
    let mut acc = AffineBirMap::identity(f.field());
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.compose(&base)?;
        }
        e >>= 1;
        if e > 0 {
            base = base.compose(&base)?;
        }
    }
    Ok(acc)
}
