use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Document-type token and its probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocShare {
    pub doc_type: String,
    pub p: f64,
}

/// One planted tier of journals. Papers in the tier draw their
/// attractiveness from `exp(N(mu, sigma))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tier {
    pub name: String,
    /// Share of journals in this tier.
    pub journal_share: f64,
    /// Relative number of papers per journal.
    pub papers_weight: f64,
    pub mu: f64,
    pub sigma: f64,
    /// Overrides the global reference-list length range.
    pub refs: Option<(u32, u32)>,
    /// Probability that a reference stays inside the citing paper's field.
    pub locality: f64,
    /// Number of subject fields owned by the tier.
    pub fields: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CitationModel {
    Lognormal { mu: f64, sigma: f64 },
    PowerLaw { alpha: f64 },
    Planted { tiers: Vec<Tier> },
}

/// Reference lists: length `m` uniform in `min..=max`; `resolvable` of the
/// entries point into the corpus, the rest are external DOIs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceModel {
    pub min: u32,
    pub max: u32,
    pub resolvable: f64,
    /// Papers whose declared `ref_count` is left out.
    pub missing_count_rate: f64,
    /// Papers with no reference metadata at all; their in-corpus citations
    /// go to `edges.jsonl` instead. Such papers show up as
    /// `empty_reference_papers` in validation, so the default is 0.
    pub bare_rate: f64,
}

impl Default for ReferenceModel {
    fn default() -> Self {
        ReferenceModel { min: 5, max: 40, resolvable: 0.6, missing_count_rate: 0.1, bare_rate: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub n_journals: u32,
    pub n_papers: u32,
    pub first_year: i32,
    pub last_year: i32,
    pub n_publishers: u32,
    pub doc_type_mix: Vec<DocShare>,
    pub citation_model: CitationModel,
    pub references: ReferenceModel,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        let mix = [
            ("research_article", 0.70),
            ("review_article", 0.08),
            ("conference_paper", 0.06),
            ("case_report", 0.03),
            ("clinical_trial", 0.02),
            ("editorial", 0.05),
            ("letter", 0.04),
            ("book_chapter", 0.01),
            ("other", 0.01),
        ];
        GeneratorConfig {
            seed: 42,
            n_journals: 100,
            n_papers: 10_000,
            first_year: 2015,
            last_year: 2024,
            n_publishers: 10,
            doc_type_mix: mix.iter().map(|(d, p)| DocShare { doc_type: d.to_string(), p: *p }).collect(),
            citation_model: CitationModel::Lognormal { mu: 0.0, sigma: 1.2 },
            references: ReferenceModel::default(),
        }
    }
}

impl GeneratorConfig {
    pub fn with_size(seed: u64, n_journals: u32, n_papers: u32) -> Self {
        GeneratorConfig { seed, n_journals, n_papers, ..Default::default() }
    }

    /// Two tiers: broad "science" journals with long reference lists, and a
    /// small cluster of "humanities-like" journals with few papers, short
    /// and local reference lists and a heavy top tail.
    pub fn planted(seed: u64, n_journals: u32, n_papers: u32) -> Self {
        let tiers = vec![
            Tier {
                name: "science".into(),
                journal_share: 0.8,
                papers_weight: 1.0,
                mu: 0.0,
                sigma: 1.0,
                refs: Some((25, 60)),
                locality: 0.6,
                fields: 6,
            },
            Tier {
                name: "humanities".into(),
                journal_share: 0.2,
                papers_weight: 0.25,
                mu: -0.5,
                sigma: 2.0,
                refs: Some((3, 8)),
                locality: 0.95,
                fields: 2,
            },
        ];
        GeneratorConfig {
            citation_model: CitationModel::Planted { tiers },
            ..GeneratorConfig::with_size(seed, n_journals, n_papers)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.n_journals == 0 || self.n_papers == 0 || self.n_publishers == 0 {
            return bad("journal, paper and publisher counts must be positive".into());
        }
        if self.n_papers < self.n_journals {
            return bad(format!("{} papers cannot fill {} journals", self.n_papers, self.n_journals));
        }
        if self.first_year > self.last_year {
            return bad(format!("year range {}..{} is empty", self.first_year, self.last_year));
        }
        check_probabilities("doc_type_mix", self.doc_type_mix.iter().map(|d| d.p))?;
        let r = &self.references;
        for (name, p) in [
            ("resolvable", r.resolvable),
            ("missing_count_rate", r.missing_count_rate),
            ("bare_rate", r.bare_rate),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} {p} is not a probability"));
            }
        }
        let mut ranges = vec![(r.min, r.max)];
        match &self.citation_model {
            CitationModel::Lognormal { sigma, .. } if *sigma < 0.0 => return bad("negative sigma".into()),
            CitationModel::PowerLaw { alpha } if *alpha <= 0.0 => return bad("alpha must be positive".into()),
            CitationModel::Planted { tiers } => {
                if tiers.is_empty() {
                    return bad("planted model needs at least one tier".into());
                }
                check_probabilities("tier journal_share", tiers.iter().map(|t| t.journal_share))?;
                for t in tiers {
                    if t.papers_weight <= 0.0 || t.sigma < 0.0 || t.fields == 0 {
                        return bad(format!("tier `{}` has a non-positive weight, sigma or field count", t.name));
                    }
                    if !(0.0..=1.0).contains(&t.locality) {
                        return bad(format!("tier `{}` locality is not a probability", t.name));
                    }
                    ranges.extend(t.refs);
                }
            }
            _ => {}
        }
        for (lo, hi) in ranges {
            if lo > hi {
                return bad(format!("reference range {lo}..{hi} is empty"));
            }
            if u64::from(lo) > u64::from(self.n_papers) - 1 && r.resolvable > 0.0 {
                return bad(format!(
                    "{lo} references per paper demanded but only {} other papers exist",
                    self.n_papers - 1
                ));
            }
        }
        Ok(())
    }
}

fn check_probabilities(name: &str, ps: impl Iterator<Item = f64>) -> Result<()> {
    let mut sum = 0.0;
    for p in ps {
        if p.is_nan() || p < 0.0 {
            return Err(Error::InvalidConfig(format!("{name} has a negative entry")));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidConfig(format!("{name} sums to {sum}, not 1")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        GeneratorConfig::default().validate().unwrap();
        GeneratorConfig::planted(1, 50, 2000).validate().unwrap();
    }

    #[test]
    fn rejects_bad_configs() {
        let mut c = GeneratorConfig::with_size(1, 2, 10);
        c.doc_type_mix[0].p = 0.5;
        assert!(c.validate().is_err());
        let mut c = GeneratorConfig::with_size(1, 2, 10);
        c.references.min = 10;
        c.references.max = 12;
        assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))));
        assert!(GeneratorConfig::with_size(1, 5, 3).validate().is_err());
    }
}
