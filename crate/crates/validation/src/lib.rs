//! Host crate for the `acceptance` test target, which exercises the
//! verification sweeps of `whittaker-cli` against fixed criteria.
