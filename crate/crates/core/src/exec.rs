//! Size caps and the sequential/parallel execution switch.
//!
//! Heavy operations come in two flavours: a plain function using
//! [`Settings::default`] and a `_with` variant taking explicit settings.
//! Parallel and sequential runs produce identical output; only ordered
//! collects and first-match searches are used.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Upper bounds on exponential work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest ground set accepted by power-set scans.
    pub enumeration: usize,
    /// Above this ground size rdp is built from join-irreducibles instead
    /// of a power-set scan.
    pub scan_threshold: usize,
    /// Largest lattice materialized by rdp or downsets. Join and meet tables
    /// are dense, so memory grows with the square of this.
    pub lattice: usize,
    /// Largest lattice accepted by the distributive-ideal oracle.
    pub ideals: usize,
    /// Candidate maps visited by morphism enumeration.
    pub morphisms: u64,
    /// Largest coequalizer target.
    pub coequalizer: usize,
    /// Largest lattice accepted by isomorphism search.
    pub iso: usize,
    /// Largest product ground set.
    pub product: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            enumeration: 20,
            scan_threshold: 12,
            lattice: 4096,
            ideals: 16,
            morphisms: 1_000_000,
            coequalizer: 6,
            iso: 64,
            product: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, else sequential.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub caps: Caps,
    pub exec: Exec,
}

impl Settings {
    pub fn sequential() -> Self {
        Self {
            exec: Exec::Sequential,
            ..Self::default()
        }
    }

    pub fn parallel() -> Self {
        Self {
            exec: Exec::Parallel,
            ..Self::default()
        }
    }

    pub fn with_caps(caps: Caps) -> Self {
        Self {
            caps,
            ..Self::default()
        }
    }

    #[cfg(feature = "parallel")]
    fn par(&self) -> bool {
        self.exec == Exec::Parallel
    }

    /// Ordered map over a slice.
    pub(crate) fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.par() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Ordered filter-map over `0..n`.
    pub(crate) fn filter_range<R, F>(&self, n: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> Option<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.par() {
            return (0..n).into_par_iter().filter_map(f).collect();
        }
        (0..n).filter_map(f).collect()
    }

    /// First match in slice order.
    pub(crate) fn find_map<T, R, F>(&self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.par() {
            return items.par_iter().find_map_first(f);
        }
        items.iter().find_map(f)
    }

    /// First match in index order over `0..n`.
    pub(crate) fn find_index<R, F>(&self, n: usize, f: F) -> Option<R>
    where
        R: Send,
        F: Fn(usize) -> Option<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.par() {
            return (0..n).into_par_iter().find_map_first(f);
        }
        (0..n).find_map(f)
    }
}
