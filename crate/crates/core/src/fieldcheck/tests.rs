use std::collections::BTreeMap;

use super::*;
use crate::catalog::{build_case, CaseSpec, SettingId};

fn record(label: &str, degree: u32, r1: u32, r2: u32, cl: &[u64], partner: Option<&str>) -> FieldRecord {
    FieldRecord {
        label: label.into(),
        degree,
        r1,
        r2,
        disc: -23,
        class_group: cl.to_vec(),
        galois_closure: Family::S3,
        resolvent_label: partner.map(Into::into),
        u: 1,
        closure_unramified_over_resolvent: true,
        setting: None,
    }
}

fn s3_nf() -> crate::catalog::CaseInstance {
    build_case(CaseSpec::new(Family::S3, None, None).unwrap(), SettingId::Nf).unwrap()
}

#[test]
fn rk_examples() {
    assert_eq!(rk_l(&[], 2), 0);
    assert_eq!(rk_l(&[2, 4], 2), 2);
    assert_eq!(rk_l(&[2, 6, 12], 3), 2);
    assert_eq!(rk_l(&[5, 25], 3), 0);
}

#[test]
fn empty_text_has_no_records() {
    assert_eq!(parse_str(""), Parsed::default());
    assert_eq!(parse_str("\n  \n"), Parsed::default());
}

#[test]
fn bad_lines_are_reported_with_numbers() {
    let good = serde_json::to_string(&record("a", 3, 1, 1, &[3], None)).unwrap();
    let bad_sig = serde_json::to_string(&record("b", 3, 2, 1, &[], None)).unwrap();
    let bad_cg = serde_json::to_string(&record("c", 3, 1, 1, &[4, 6], None)).unwrap();
    let text = format!("{good}\n{bad_sig}\n\nnot json\n{bad_cg}\n");
    let p = parse_str(&text);
    assert_eq!(p.records.len(), 1);
    let lines: Vec<usize> = p.errors.iter().map(|e| e.line).collect();
    assert_eq!(lines, vec![2, 4, 5]);
    assert!(p.errors[0].message.contains("signature"));
    assert!(p.errors[2].message.contains("divide"));
}

#[test]
fn unknown_family_tag_is_rejected() {
    let line = serde_json::to_string(&record("a", 3, 1, 1, &[], None)).unwrap().replace("\"S3\"", "\"C5\"");
    assert_eq!(parse_str(&line).errors.len(), 1);
}

#[test]
fn u_must_be_in_range() {
    let mut r = record("a", 3, 1, 1, &[], None);
    r.u = 0;
    assert!(r.validate().is_err());
    r.u = 4;
    assert!(r.validate().is_err());
}

#[test]
fn pairing_links_and_reports() {
    let recs = vec![
        record("k1", 3, 1, 1, &[], Some("k2")),
        record("k2", 2, 0, 1, &[3], None),
        record("lonely", 3, 1, 1, &[], Some("gone")),
        record("orphan", 2, 0, 1, &[], None),
    ];
    let p = pair_resolvents(&recs);
    assert_eq!(p.pairs.len(), 1);
    assert_eq!(p.pairs[0].k2.label, "k2");
    let unpaired: Vec<&str> = p.unpaired.iter().map(|u| u.label.as_str()).collect();
    assert_eq!(unpaired, vec!["lonely", "orphan"]);
    assert!(p.unpaired.iter().all(|u| u.reason == SkipReason::MissingPartner));
}

#[test]
fn cubic_pair_passes() {
    // disc −23: trivial cubic class group, quadratic class number 3
    let mut k1 = record("3.1.23.1", 3, 1, 1, &[], Some("2.0.23.1"));
    let mut k2 = record("2.0.23.1", 2, 0, 1, &[3], None);
    k1.u = 1;
    k2.u = 2;
    let r = check_pairs(&[FieldPair { k1, k2 }], &s3_nf()).unwrap();
    assert_eq!(r[0].verdict, Verdict::Pass);
    assert_eq!((r[0].rk1, r[0].rk2), (Some(0), Some(1)));
}

#[test]
fn hypothesis_flag_skips() {
    let mut k1 = record("k1", 3, 1, 1, &[], Some("k2"));
    k1.closure_unramified_over_resolvent = false;
    let k2 = record("k2", 2, 0, 1, &[3], None);
    let r = check_pairs(&[FieldPair { k1, k2 }], &s3_nf()).unwrap();
    assert_eq!(r[0].verdict, Verdict::Skipped(SkipReason::UnramifiedHypothesisFailed));
}

#[test]
fn fabricated_ranks_fail() {
    let k1 = record("k1", 3, 1, 1, &[3; 9], Some("k2"));
    let k2 = record("k2", 2, 0, 1, &[], None);
    let r = check_pairs(&[FieldPair { k1, k2 }], &s3_nf()).unwrap();
    assert_eq!(r[0].verdict, Verdict::Fail);
    assert_eq!(CheckSummary::of(&r), CheckSummary { pass: 0, fail: 1, skipped: 0 });
}

#[test]
fn mismatches_skip() {
    let k1 = record("k1", 3, 1, 1, &[], Some("k2"));
    let k2 = record("k2", 2, 0, 1, &[], None);
    let a4 = build_case(CaseSpec::new(Family::A4, None, None).unwrap(), SettingId::Nf).unwrap();
    let r = check_pairs(&[FieldPair { k1: k1.clone(), k2: k2.clone() }], &a4).unwrap();
    assert_eq!(r[0].verdict, Verdict::Skipped(SkipReason::FamilyMismatch));
    let ff = build_case(CaseSpec::new(Family::S3, None, None).unwrap(), SettingId::FfMu).unwrap();
    let r = check_pairs(&[FieldPair { k1, k2 }], &ff).unwrap();
    assert_eq!(r[0].verdict, Verdict::Skipped(SkipReason::SettingMismatch));
}

#[test]
fn function_field_records_use_the_picard_bound() {
    let ff = build_case(CaseSpec::new(Family::S3, None, None).unwrap(), SettingId::FfMu).unwrap();
    let mk = |label: &str, cl: &[u64], partner| {
        let mut r = record(label, 3, 0, 0, cl, partner);
        r.setting = Some("ff-mu".into());
        r
    };
    // rk₂ − 2 ≤ rk₁ ≤ rk₂
    for (rk1, rk2, verdict) in [(1, 2, Verdict::Pass), (3, 2, Verdict::Fail), (0, 3, Verdict::Fail)] {
        let pair = FieldPair {
            k1: mk("c1", &vec![3; rk1], Some("c2")),
            k2: mk("c2", &vec![3; rk2], None),
        };
        assert_eq!(check_pairs(&[pair], &ff).unwrap()[0].verdict, verdict, "{rk1} {rk2}");
    }
}

#[test]
fn torsion_rule() {
    let mut q3 = record("2.0.3.1", 2, 0, 1, &[], None);
    q3.disc = -3;
    assert!(unit_descriptor(&q3, 3).unwrap().torsion);
    assert!(!unit_descriptor(&q3, 5).unwrap().torsion);
    let cubic = record("c", 3, 1, 1, &[], None);
    assert!(!unit_descriptor(&cubic, 3).unwrap().torsion);
    assert!(unit_descriptor(&cubic, 2).unwrap().torsion);
}

struct Canned {
    pages: BTreeMap<usize, String>,
    calls: usize,
    fail_after: Option<usize>,
}

impl Transport for Canned {
    fn get(&mut self, url: &str) -> Result<String, String> {
        self.calls += 1;
        if self.fail_after.is_some_and(|n| self.calls > n) {
            return Err("connection reset".into());
        }
        let offset: usize = url.rsplit("_offset=").next().unwrap().parse().unwrap();
        Ok(self.pages.get(&offset).cloned().unwrap_or_else(|| r#"{"data":[]}"#.into()))
    }
}

fn row(i: u64, with_u: bool) -> String {
    let u = if with_u { r#","u":1"# } else { "" };
    format!(
        r#"{{"label":"4.4.{d}.1","degree":4,"r2":0,"disc_abs":{d},"disc_sign":1,"class_group":[2],"galois_label":"4T4"{u}}}"#,
        d = 1000 + i
    )
}

fn canned(n: usize, fail_after: Option<usize>) -> Canned {
    let rows: Vec<String> = (0..n as u64).map(|i| row(i, i % 10 != 7)).collect();
    let pages = rows
        .chunks(100)
        .enumerate()
        .map(|(k, c)| (k * 100, format!(r#"{{"data":[{}]}}"#, c.join(","))))
        .collect();
    Canned {
        pages,
        calls: 0,
        fail_after,
    }
}

fn query(limit: usize) -> FetchQuery {
    FetchQuery {
        galois: Family::A4,
        degree: 4,
        disc_max: None,
        limit,
    }
}

#[test]
fn zero_limit_writes_empty_file_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a4.jsonl");
    let mut t = canned(50, None);
    let m = fetch_remote(&query(0), "http://db", &out, &mut t, &FileCache::new(dir.path().join("cache"))).unwrap();
    assert_eq!(t.calls, 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "");
    assert!(m.complete && m.records == 0);
    assert!(manifest_path(&out).exists());
}

#[test]
fn repeated_query_is_served_from_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = FileCache::new(dir.path().join("cache"));
    let (a, b) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
    let mut t = canned(150, None);
    let first = fetch_remote(&query(120), "http://db", &a, &mut t, &cache).unwrap();
    assert_eq!(t.calls, 2);
    let mut offline = canned(0, Some(0));
    let second = fetch_remote(&query(120), "http://db", &b, &mut offline, &cache).unwrap();
    assert_eq!(offline.calls, 0);
    assert_eq!(second.served_from_cache, 2);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(first.records, 120);
    // rows without u are listed, not written
    assert!(first.skipped.iter().all(|(_, why)| why.contains("primes above l")));
    let parsed = parse_records(&a).unwrap();
    assert!(parsed.errors.is_empty());
    assert_eq!(parsed.records.len(), 120);
}

#[test]
fn failure_keeps_partial_results() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a4.jsonl");
    let mut t = canned(250, Some(1));
    let err = fetch_remote(&query(500), "http://db", &out, &mut t, &FileCache::new(dir.path().join("c"))).unwrap_err();
    assert!(matches!(err, FetchError::Http { ref url, .. } if url.contains("_offset=100")));
    let m: FetchManifest = serde_json::from_str(&std::fs::read_to_string(manifest_path(&out)).unwrap()).unwrap();
    assert!(!m.complete);
    assert_eq!(m.records, 90);
    assert_eq!(parse_records(&out).unwrap().records.len(), 90);
}

#[test]
fn disc_bound_stops_paging() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a4.jsonl");
    let mut t = canned(300, None);
    let mut q = query(1000);
    q.disc_max = Some(1005);
    let m = fetch_remote(&q, "http://db", &out, &mut t, &FileCache::new(dir.path().join("c"))).unwrap();
    assert_eq!(t.calls, 1);
    assert_eq!(m.records, 6);
}

#[test]
fn unsupported_family_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let q = FetchQuery {
        galois: Family::SemiDirect,
        degree: 7,
        disc_max: None,
        limit: 5,
    };
    let mut t = canned(0, None);
    assert!(matches!(
        fetch_remote(&q, "http://db", &dir.path().join("x"), &mut t, &FileCache::new(dir.path())),
        Err(FetchError::Unsupported { .. })
    ));
}
