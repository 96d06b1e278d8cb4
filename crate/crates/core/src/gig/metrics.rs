use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::config::Configuration;

use super::{GeneralIterationGraph, GigError};

/// How arcs are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcWeighting {
    /// One arc per nonempty node subset.
    #[default]
    Labeled,
    /// One arc per distinct `(x, y)` pair.
    Distinct,
}

/// `1 / deg_out`, infinite when nothing leaves the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Robustness {
    Infinite,
    Finite(Ratio<u64>),
}

impl Robustness {
    pub fn is_infinite(self) -> bool {
        matches!(self, Robustness::Infinite)
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Robustness::Infinite => f64::INFINITY,
            Robustness::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
        }
    }
}

impl fmt::Display for Robustness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Robustness::Infinite => f.write_str("inf"),
            Robustness::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// Arc counts around a configuration set `C` and the derived robustness and
/// likeliness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigSetReport {
    pub members: Vec<Configuration>,
    pub weighting: ArcWeighting,
    /// Arcs `x -> y` with `x ∈ C`, `y ∉ C`.
    pub deg_out: u64,
    /// Arcs `x -> y` with `x ∉ C`, `y ∈ C`.
    pub deg_in: u64,
    /// Arcs with both ends outside `C`, self-loops included.
    pub t_outside: u64,
    pub robustness: Robustness,
    /// `deg_in / t_outside`; `None` when `t_outside` is 0.
    pub likeliness: Option<Ratio<u64>>,
}

impl ConfigSetReport {
    pub fn likeliness(&self) -> Result<Ratio<u64>, GigError> {
        self.likeliness.ok_or(GigError::UndefinedLikeliness)
    }
}

/// Counts arcs entering, leaving and avoiding `set`. Duplicates in `set`
/// are ignored.
pub fn set_metrics(
    gig: &GeneralIterationGraph,
    set: &[Configuration],
    weighting: ArcWeighting,
) -> Result<ConfigSetReport, GigError> {
    if set.is_empty() {
        return Err(GigError::EmptySet);
    }
    let mut inside = vec![false; gig.node_count() as usize];
    for &x in set {
        gig.check_configuration(x)?;
        inside[x.0 as usize] = true;
    }
    let members: Vec<Configuration> = gig
        .configurations()
        .filter(|x| inside[x.0 as usize])
        .collect();

    let (mut deg_out, mut deg_in, mut t_outside) = (0u64, 0u64, 0u64);
    for x in gig.configurations() {
        let from_inside = inside[x.0 as usize];
        for (y, m) in gig.arcs_from(x) {
            let w = match weighting {
                ArcWeighting::Labeled => m,
                ArcWeighting::Distinct => 1,
            };
            match (from_inside, inside[y.0 as usize]) {
                (true, false) => deg_out += w,
                (false, true) => deg_in += w,
                (false, false) => t_outside += w,
                (true, true) => {}
            }
        }
    }
    let robustness = if deg_out == 0 {
        Robustness::Infinite
    } else {
        Robustness::Finite(Ratio::new(1, deg_out))
    };
    let likeliness = (t_outside != 0).then(|| Ratio::new(deg_in, t_outside));
    Ok(ConfigSetReport {
        members,
        weighting,
        deg_out,
        deg_in,
        t_outside,
        robustness,
        likeliness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;
    use crate::network::NodeSet;

    fn cx(s: &str) -> Configuration {
        Configuration::parse_binary(s).unwrap().0
    }

    fn pos3() -> (crate::network::Network, GeneralIterationGraph) {
        let net = Circuit::canonical_positive(3).network();
        let g = GeneralIterationGraph::build(&net).unwrap();
        (net, g)
    }

    #[test]
    fn fixed_point_is_robust_and_likely() {
        let (_, g) = pos3();
        let r = set_metrics(&g, &[cx("000")], ArcWeighting::Labeled).unwrap();
        assert_eq!(r.deg_out, 0);
        assert!(r.robustness.is_infinite());
        assert!(r.likeliness().unwrap() > Ratio::new(0, 1));
    }

    #[test]
    fn whole_space_has_undefined_likeliness() {
        let (_, g) = pos3();
        let all: Vec<_> = g.configurations().collect();
        let r = set_metrics(&g, &all, ArcWeighting::Labeled).unwrap();
        assert!(r.robustness.is_infinite());
        assert_eq!(r.likeliness(), Err(GigError::UndefinedLikeliness));
    }

    #[test]
    fn limit_cycle_counts_match_brute_force() {
        let (net, g) = pos3();
        let set = [cx("011"), cx("101"), cx("110")];
        let r = set_metrics(&g, &set, ArcWeighting::Labeled).unwrap();
        // Brute force over all (x, P).
        let (mut out, mut inn, mut rest) = (0, 0, 0);
        for w in 0..8u64 {
            for p in 1..8u64 {
                let y = net.apply_subset(Configuration(w), NodeSet(p));
                match (set.contains(&Configuration(w)), set.contains(&y)) {
                    (true, false) => out += 1,
                    (false, true) => inn += 1,
                    (false, false) => rest += 1,
                    _ => {}
                }
            }
        }
        assert_eq!((r.deg_out, r.deg_in, r.t_outside), (out, inn, rest));
        assert!(r.deg_out > 0 && r.deg_in > 0);
        assert_eq!(r.robustness, Robustness::Finite(Ratio::new(1, out)));
    }

    #[test]
    fn distinct_weighting_counts_pairs() {
        let (_, g) = pos3();
        let r = set_metrics(&g, &[cx("100")], ArcWeighting::Distinct).unwrap();
        // 100 has three distinct targets besides itself.
        assert_eq!(r.deg_out, 3);
    }

    #[test]
    fn errors() {
        let (_, g) = pos3();
        assert_eq!(
            set_metrics(&g, &[], ArcWeighting::Labeled),
            Err(GigError::EmptySet)
        );
        assert!(matches!(
            set_metrics(&g, &[Configuration(9)], ArcWeighting::Labeled),
            Err(GigError::InvalidConfiguration { .. })
        ));
    }
}
