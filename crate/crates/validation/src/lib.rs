//! Host crate for the `acceptance` test target; run it with `cargo test -p sumfree-validation`.
