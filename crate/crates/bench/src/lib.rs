//! Shared inputs for the benchmarks.

use quadperm::{irreducible_rep, AdmissibleVector, GeneralizedPermutation, IrreducibleName};

/// The five exceptional representatives.
pub fn representatives() -> Vec<GeneralizedPermutation> {
    IrreducibleName::ALL.iter().map(|&n| irreducible_rep(n)).collect()
}

/// A representative of `Q^{irr,I}(12)` with its all-ones lengths.
pub fn twelve_one() -> (GeneralizedPermutation, AdmissibleVector) {
    let gp = irreducible_rep(IrreducibleName::TwelveI);
    let lambda = AdmissibleVector::all_ones(&gp).expect("balanced type");
    (gp, lambda)
}
