use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::BufReader;
use std::path::Path;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{LogNormal, Pareto};

use super::config::{CitationModel, GeneratorConfig, Tier};
use crate::corpus::schema::{EdgeLine, JournalLine, PaperLine, SubjectRow, SUBJECTS_HEADER};
use crate::corpus::{Corpus, CorpusBuilder, CorpusConfig, IngestReport, Issn};
use crate::error::{Error, Result};

/// A generated corpus in wire form, plus the tier of each journal.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthCorpus {
    pub papers: Vec<PaperLine>,
    pub journals: Vec<JournalLine>,
    pub subjects: Vec<SubjectRow>,
    pub edges: Vec<EdgeLine>,
    /// journal id -> tier name
    pub tiers: BTreeMap<String, String>,
}

pub const PAPERS_FILE: &str = "papers.jsonl";
pub const JOURNALS_FILE: &str = "journals.jsonl";
pub const SUBJECTS_FILE: &str = "subjects.csv";
pub const EDGES_FILE: &str = "edges.jsonl";

enum Attractiveness {
    LogNormal(LogNormal<f64>),
    Pareto(Pareto<f64>),
}

impl Attractiveness {
    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Attractiveness::LogNormal(d) => d.sample(rng),
            Attractiveness::Pareto(d) => d.sample(rng),
        }
    }
}

struct TierPlan {
    name: String,
    papers_weight: f64,
    attractiveness: Attractiveness,
    refs: (u32, u32),
    locality: f64,
    fields: u32,
    field_offset: u32,
}

fn tier_plans(config: &GeneratorConfig) -> Result<Vec<(TierPlan, f64)>> {
    let bad = |e: String| Error::InvalidConfig(e);
    let global_refs = (config.references.min, config.references.max);
    let single = |attractiveness| {
        let fields = (config.n_journals / 10).clamp(1, 8);
        vec![(
            TierPlan {
                name: "all".into(),
                papers_weight: 1.0,
                attractiveness,
                refs: global_refs,
                locality: 0.5,
                fields,
                field_offset: 0,
            },
            1.0,
        )]
    };
    Ok(match &config.citation_model {
        CitationModel::Lognormal { mu, sigma } => {
            single(Attractiveness::LogNormal(LogNormal::new(*mu, *sigma).map_err(|e| bad(e.to_string()))?))
        }
        CitationModel::PowerLaw { alpha } => {
            single(Attractiveness::Pareto(Pareto::new(1.0, *alpha).map_err(|e| bad(e.to_string()))?))
        }
        CitationModel::Planted { tiers } => {
            let mut offset = 0;
            let mut out = Vec::new();
            for Tier { name, journal_share, papers_weight, mu, sigma, refs, locality, fields } in tiers {
                let d = LogNormal::new(*mu, *sigma).map_err(|e| bad(e.to_string()))?;
                out.push((
                    TierPlan {
                        name: name.clone(),
                        papers_weight: *papers_weight,
                        attractiveness: Attractiveness::LogNormal(d),
                        refs: refs.unwrap_or(global_refs),
                        locality: *locality,
                        fields: *fields,
                        field_offset: offset,
                    },
                    *journal_share,
                ));
                offset += fields;
            }
            out
        }
    })
}

/// Splits `total` by `shares` with largest remainders; ties go to the
/// earlier entry.
fn apportion(total: u32, shares: &[f64]) -> Vec<u32> {
    let raw: Vec<f64> = shares.iter().map(|s| s * f64::from(total)).collect();
    let mut counts: Vec<u32> = raw.iter().map(|r| r.floor() as u32).collect();
    let mut order: Vec<usize> = (0..shares.len()).collect();
    order.sort_by(|&a, &b| (raw[b] - raw[b].floor()).total_cmp(&(raw[a] - raw[a].floor())).then(a.cmp(&b)));
    let assigned: u32 = counts.iter().sum();
    for &i in order.iter().cycle().take(total.saturating_sub(assigned) as usize) {
        counts[i] += 1;
    }
    counts
}

struct Draft {
    journal: usize,
    year: i32,
    doc_type: usize,
    attractiveness: f64,
}

/// Generates a corpus. Equal configs give identical output; the random
/// stream is ChaCha8 seeded from `config.seed`.
pub fn generate(config: &GeneratorConfig) -> Result<SynthCorpus> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let plans = tier_plans(config)?;
    let shares: Vec<f64> = plans.iter().map(|(_, s)| *s).collect();
    let per_tier = apportion(config.n_journals, &shares);

    let width = config.n_journals.to_string().len().max(4);
    let mut journals = Vec::new();
    let mut journal_tier = Vec::new();
    let mut journal_field = Vec::new();
    let mut tiers = BTreeMap::new();
    for (t, ((plan, _), &count)) in plans.iter().zip(&per_tier).enumerate() {
        for k in 0..count {
            let i = journals.len() as u32;
            let id = format!("J{:0width$}", i + 1);
            let publisher = i % config.n_publishers;
            journals.push(JournalLine {
                id: id.clone(),
                title: format!("Synthetic {} Journal {}", capitalize(&plan.name), i + 1),
                issn: vec![Issn::from_body(2 * i + 1_000_001).hyphenated()],
                eissn: vec![Issn::from_body(2 * i + 1_000_002).hyphenated()],
                publisher_id: Some(format!("PUB{:03}", publisher + 1)),
                publisher_name: Some(format!("Publisher {}", publisher + 1)),
            });
            journal_tier.push(t);
            journal_field.push(plan.field_offset + k % plan.fields);
            tiers.insert(id, plan.name.clone());
        }
    }
    let n_fields: u32 = plans.iter().map(|(p, _)| p.fields).sum();

    // Every journal gets one paper; the rest follow tier weight times a
    // per-journal size factor.
    let size = LogNormal::new(0.0, 0.5).expect("valid");
    let journal_weights: Vec<f64> = journal_tier
        .iter()
        .map(|&t| plans[t].0.papers_weight * size.sample(&mut rng))
        .collect();
    let pick_journal = WeightedIndex::new(&journal_weights).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let mut papers_per_journal = vec![1u32; journals.len()];
    for _ in 0..config.n_papers - config.n_journals {
        papers_per_journal[pick_journal.sample(&mut rng)] += 1;
    }

    let pick_doc = WeightedIndex::new(config.doc_type_mix.iter().map(|d| d.p))
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let mut drafts = Vec::with_capacity(config.n_papers as usize);
    for (j, &count) in papers_per_journal.iter().enumerate() {
        for _ in 0..count {
            drafts.push(Draft {
                journal: j,
                year: rng.random_range(config.first_year..=config.last_year),
                doc_type: pick_doc.sample(&mut rng),
                attractiveness: plans[journal_tier[j]].0.attractiveness.sample(&mut rng),
            });
        }
    }
    // Stable sort keeps the journal order inside a year.
    drafts.sort_by_key(|d| d.year);

    let pwidth = config.n_papers.to_string().len().max(6);
    let ids: Vec<String> = (0..drafts.len()).map(|i| format!("P{:0pwidth$}", i + 1)).collect();
    let dois: Vec<Option<String>> = (0..drafts.len())
        .map(|i| (rng.random::<f64>() >= 0.1).then(|| format!("10.5555/syn.{}", i + 1)))
        .collect();

    let sampler = TargetSampler::new(&drafts, &journal_field, n_fields);
    let refs_model = &config.references;
    let mut papers = Vec::with_capacity(drafts.len());
    let mut edges = Vec::new();
    for (i, d) in drafts.iter().enumerate() {
        let plan = &plans[journal_tier[d.journal]].0;
        let m = rng.random_range(plan.refs.0..=plan.refs.1);
        let wanted = (f64::from(m) * refs_model.resolvable).round() as usize;
        let field = journal_field[d.journal];
        let targets = sampler.draw(&mut rng, i, d.year, field, plan.locality, wanted);

        let bare = rng.random::<f64>() < refs_model.bare_rate;
        let mut line = PaperLine {
            id: ids[i].clone(),
            doi: dois[i].clone(),
            year: i64::from(d.year),
            doc_type: config.doc_type_mix[d.doc_type].doc_type.clone(),
            journal_id: Some(journals[d.journal].id.clone()),
            references: Vec::new(),
            ref_count: None,
        };
        if bare {
            edges.extend(targets.iter().map(|&t| EdgeLine { citing: ids[i].clone(), cited: ids[t].clone() }));
        } else {
            for &t in &targets {
                let entry = match &dois[t] {
                    Some(doi) if rng.random::<bool>() => doi.clone(),
                    _ => ids[t].clone(),
                };
                line.references.push(entry);
            }
            let external = (m as usize).saturating_sub(targets.len());
            line.references.extend((0..external).map(|r| format!("10.9999/ext.{}.{}", i + 1, r + 1)));
            if rng.random::<f64>() >= refs_model.missing_count_rate {
                let unlisted = if rng.random::<f64>() < 0.2 { rng.random_range(1..=5) } else { 0 };
                line.ref_count = Some(line.references.len() as i64 + unlisted);
            }
        }
        papers.push(line);
    }

    let mut subjects = Vec::new();
    for (j, journal) in journals.iter().enumerate() {
        let field = journal_field[j];
        let label = field_label(&plans, field);
        subjects.push(SubjectRow {
            journal_key: journal.id.clone(),
            scheme: "scilit".into(),
            subject_id: format!("SL{:02}", field + 1),
            subject_label: label.clone(),
        });
        subjects.push(SubjectRow {
            journal_key: journal.issn[0].clone(),
            scheme: "scopus_asjc".into(),
            subject_id: format!("{}", 1100 + 100 * field),
            subject_label: label.clone(),
        });
        subjects.push(SubjectRow {
            journal_key: journal.eissn[0].clone(),
            scheme: "wos_category".into(),
            subject_id: format!("W{:02}", field + 1),
            subject_label: label,
        });
        if n_fields > 1 && rng.random::<f64>() < 0.15 {
            let other = (field + rng.random_range(1..n_fields)) % n_fields;
            subjects.push(SubjectRow {
                journal_key: journal.id.clone(),
                scheme: "scilit".into(),
                subject_id: format!("SL{:02}", other + 1),
                subject_label: field_label(&plans, other),
            });
        }
    }
    subjects.sort_by(|a, b| {
        (&a.scheme, &a.subject_id, &a.journal_key).cmp(&(&b.scheme, &b.subject_id, &b.journal_key))
    });

    Ok(SynthCorpus { papers, journals, subjects, edges, tiers })
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
}

fn field_label(plans: &[(TierPlan, f64)], field: u32) -> String {
    let (plan, _) = plans
        .iter()
        .find(|(p, _)| (p.field_offset..p.field_offset + p.fields).contains(&field))
        .expect("field belongs to a tier");
    format!("{} {}", capitalize(&plan.name), field - plan.field_offset + 1)
}

/// Attractiveness-weighted sampling of earlier-or-same-year papers, either
/// corpus-wide or inside one field. Papers are in year order, so the
/// eligible set is always a prefix.
struct TargetSampler {
    years: Vec<i32>,
    cumulative: Vec<f64>,
    field_members: Vec<Vec<usize>>,
    field_cumulative: Vec<Vec<f64>>,
}

impl TargetSampler {
    fn new(drafts: &[Draft], journal_field: &[u32], n_fields: u32) -> Self {
        let mut cumulative = Vec::with_capacity(drafts.len());
        let mut field_members = vec![Vec::new(); n_fields as usize];
        let mut field_cumulative = vec![Vec::new(); n_fields as usize];
        let mut total = 0.0;
        for (i, d) in drafts.iter().enumerate() {
            total += d.attractiveness;
            cumulative.push(total);
            let f = journal_field[d.journal] as usize;
            let prev = field_cumulative[f].last().copied().unwrap_or(0.0);
            field_members[f].push(i);
            field_cumulative[f].push(prev + d.attractiveness);
        }
        TargetSampler { years: drafts.iter().map(|d| d.year).collect(), cumulative, field_members, field_cumulative }
    }

    fn pick(rng: &mut ChaCha8Rng, cumulative: &[f64]) -> usize {
        let total = cumulative[cumulative.len() - 1];
        let u = rng.random::<f64>() * total;
        cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1)
    }

    fn draw(&self, rng: &mut ChaCha8Rng, me: usize, year: i32, field: u32, locality: f64, wanted: usize) -> Vec<usize> {
        let eligible = self.years.partition_point(|&y| y <= year);
        let members = &self.field_members[field as usize];
        let field_eligible = members.partition_point(|&p| self.years[p] <= year);
        let wanted = wanted.min(eligible - 1);
        let mut chosen = BTreeSet::new();
        let mut attempts = 0;
        while chosen.len() < wanted && attempts < 20 * wanted + 20 {
            attempts += 1;
            let t = if field_eligible > 1 && rng.random::<f64>() < locality {
                members[Self::pick(rng, &self.field_cumulative[field as usize][..field_eligible])]
            } else {
                Self::pick(rng, &self.cumulative[..eligible])
            };
            if t != me {
                chosen.insert(t);
            }
        }
        chosen.into_iter().collect()
    }
}

fn jsonl<T: serde::Serialize>(items: &[T]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for item in items {
        serde_json::to_writer(&mut out, item)?;
        out.push(b'\n');
    }
    Ok(out)
}

impl SynthCorpus {
    /// The four input files as `(file name, bytes)`.
    pub fn render(&self) -> Result<Vec<(&'static str, Vec<u8>)>> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(SUBJECTS_HEADER)?;
        for s in &self.subjects {
            w.write_record([&s.journal_key, &s.scheme, &s.subject_id, &s.subject_label])?;
        }
        let subjects = w.into_inner().map_err(|e| Error::Stream(e.into_error()))?;
        Ok(vec![
            (PAPERS_FILE, jsonl(&self.papers)?),
            (JOURNALS_FILE, jsonl(&self.journals)?),
            (SUBJECTS_FILE, subjects),
            (EDGES_FILE, jsonl(&self.edges)?),
        ])
    }

    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (name, bytes) in self.render()? {
            let path = dir.join(name);
            fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }

    /// Round-trips through the ingestion path. The returned report covers
    /// all four files.
    pub fn load(&self) -> Result<(Corpus, IngestReport)> {
        let files = self.render()?;
        let mut builder = CorpusBuilder::new(CorpusConfig::default());
        let mut report = IngestReport::default();
        report.absorb(&builder.ingest_journals(BufReader::new(&files[1].1[..]))?);
        report.absorb(&builder.ingest_papers(BufReader::new(&files[0].1[..]))?);
        report.absorb(&builder.ingest_subjects(&files[2].1[..])?);
        report.absorb(&builder.ingest_edges(BufReader::new(&files[3].1[..]))?);
        Ok((builder.seal(), report))
    }

    pub fn journals_in_tier<'a>(&'a self, tier: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.tiers.iter().filter(move |(_, t)| *t == tier).map(|(j, _)| j.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_bytes() {
        let c = GeneratorConfig::with_size(42, 20, 800);
        assert_eq!(generate(&c).unwrap().render().unwrap(), generate(&c).unwrap().render().unwrap());
        let other = GeneratorConfig::with_size(43, 20, 800);
        assert_ne!(generate(&c).unwrap().papers, generate(&other).unwrap().papers);
    }

    #[test]
    fn smoke_ten_papers_two_journals() {
        let mut c = GeneratorConfig::with_size(7, 2, 10);
        c.references.min = 1;
        c.references.max = 5;
        let synth = generate(&c).unwrap();
        let (corpus, report) = synth.load().unwrap();
        assert_eq!(corpus.paper_count(), 10);
        assert_eq!(report.malformed, 0);
        assert!(corpus.validate().is_clean(), "{:?}", corpus.validate());
    }

    #[test]
    fn loads_cleanly_and_every_journal_has_papers() {
        let synth = generate(&GeneratorConfig::planted(3, 40, 3000)).unwrap();
        let (corpus, report) = synth.load().unwrap();
        assert_eq!(report.malformed + report.duplicates_dropped + report.conflicts, 0, "{report:?}");
        assert_eq!(corpus.paper_count(), 3000);
        assert!(corpus.validate().is_clean(), "{:?}", corpus.validate());
        assert_eq!(synth.journals_in_tier("humanities").count(), 8);
    }

    #[test]
    fn apportion_is_exact() {
        assert_eq!(apportion(10, &[0.8, 0.2]), vec![8, 2]);
        assert_eq!(apportion(3, &[0.5, 0.5]), vec![2, 1]);
        assert_eq!(apportion(7, &[1.0]), vec![7]);
    }
}
