//! Acceptance checks for `dsc-core`. Everything lives in `tests/acceptance.rs`,
//! which prints one PASS/FAIL line per criterion.
