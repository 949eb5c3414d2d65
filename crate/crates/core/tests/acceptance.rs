//! One line per acceptance criterion, written straight to stderr so it shows
//! in captured test runs.

use std::io::Write;
use std::time::{Duration, Instant};

use indecomp::extension::{compute_partition, Block};
use indecomp::families::{enumerate_class, Budget, ClassId};
use indecomp::format::parse_edge_list;
use indecomp::indec::is_pair_covering;
use indecomp::modular::is_indecomposable;
use indecomp::verify::oracle::{graph_from_code, oracle_indecomposable};
use indecomp::verify::sample::{random_graph, rng_for};
use indecomp::verify::{run_statement, ModeKind, Params, VerificationReport};
use indecomp::{Graph, VertexSet};
use rand::Rng;

const SEED: u64 = 20240601;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Pass,
    Triaged,
    Fail,
}

struct Line {
    status: Status,
    detail: String,
}

fn pass_if(ok: bool, detail: String) -> Line {
    Line {
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
    }
}

fn report(id: &str, n: Option<usize>, mode: Option<ModeKind>, count: Option<u64>) -> VerificationReport {
    let params = Params {
        n,
        mode,
        seed: Some(SEED),
        count,
        jobs: None,
    };
    run_statement(id, &params).unwrap_or_else(|e| panic!("{id}: {e}"))
}

fn summary(r: &VerificationReport) -> String {
    format!(
        "{}{} checked={} positives={} mismatches={}",
        r.statement_id,
        r.n.map(|n| format!("(n={n})")).unwrap_or_default(),
        r.instances_checked,
        r.positives,
        r.mismatch_count
    )
}

fn criterion_1() -> Line {
    let started = Instant::now();
    let r = report("REMARK-1", None, None, None);
    let elapsed = started.elapsed();
    pass_if(
        r.pass && r.instances_checked == 22 && elapsed < Duration::from_secs(5),
        format!("{} in {:.2?}", summary(&r), elapsed),
    )
}

fn one_vertex(id: &str, sizes: &[usize], limit: u64) -> (bool, Vec<VerificationReport>, Duration) {
    let started = Instant::now();
    let reports: Vec<VerificationReport> = sizes
        .iter()
        .map(|&n| report(id, Some(n), Some(ModeKind::Exhaustive), None))
        .collect();
    let elapsed = started.elapsed();
    let ok = reports
        .iter()
        .zip(sizes)
        .all(|(r, &n)| r.pass && r.instances_checked == 1 << (n - 1))
        && elapsed < Duration::from_secs(limit);
    (ok, reports, elapsed)
}

fn criterion_2() -> Line {
    let (ok, reports, elapsed) = one_vertex("PROP-4.2", &[9, 10, 11], 60);
    let eleven = reports[0].positives == 11;
    let parts: Vec<String> = reports.iter().map(summary).collect();
    pass_if(ok && eleven, format!("{} in {:.2?}", parts.join("; "), elapsed))
}

fn criterion_3() -> Line {
    let (ok, reports, elapsed) = one_vertex("PROP-4.4", &[11, 12], 120);
    let parts: Vec<String> = reports.iter().map(summary).collect();
    pass_if(ok, format!("{} in {:.2?}", parts.join("; "), elapsed))
}

fn criterion_4() -> Line {
    let cases = [
        (ClassId::PMinus3, 12),
        (ClassId::PMinus3, 14),
        (ClassId::QMinus3, 10),
        (ClassId::QMinus3, 14),
        (ClassId::PMinus5, 14),
        (ClassId::QMinus5, 12),
        (ClassId::QMinus5, 14),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (class, n) in cases {
        let members = enumerate_class(class, n, Budget::Exhaustive).expect("enumerate");
        let cover = n - class.removed() - 1;
        let bad = members
            .iter()
            .filter(|g| !(is_indecomposable(g) && is_pair_covering(g, 0, cover)))
            .count();
        ok &= bad == 0 && !members.is_empty();
        parts.push(format!("{}(n={n}) {} members, {bad} exceptions", class.tag(), members.len()));
    }
    pass_if(ok, parts.join("; "))
}

/// The configuration of the known `Q-3` reverse counterexamples: the three
/// extra vertices sit in `X⁻`, `X⁻(n-3)` and `X⁻(1)`.
fn in_known_configuration(g: &Graph) -> bool {
    let n = g.n();
    let m = n - 3;
    let Ok(part) = compute_partition(g, &VertexSet::from_mask(n, (1u64 << m) - 1)) else {
        return false;
    };
    let mut blocks: Vec<Block> = (m..n).filter_map(|v| part.block_of(v)).collect();
    blocks.sort();
    let mut want = vec![Block::HullMinus, Block::AttachedMinus(0), Block::AttachedMinus(m - 1)];
    want.sort();
    blocks == want
}

fn criterion_5() -> Line {
    let cases = [
        ("PROP-4.7", 12),
        ("PROP-4.10", 10),
        ("PROP-4.11", 14),
        ("PROP-4.12", 12),
    ];
    let mut status = Status::Pass;
    let mut parts = Vec::new();
    for (id, n) in cases {
        let r = report(id, Some(n), Some(ModeKind::Sampled), Some(100_000));
        parts.push(summary(&r));
        if r.positives == 0 {
            status = Status::Fail;
        }
        if r.pass {
            continue;
        }
        let graphs: Vec<Graph> = r
            .mismatches
            .iter()
            .map(|m| parse_edge_list(m.graph.as_bytes()).expect("report graphs parse"))
            .collect();
        let triaged = id == "PROP-4.10"
            && r.mismatch_count as usize == r.mismatches.len()
            && graphs.iter().all(in_known_configuration);
        if triaged {
            status = status.max_with(Status::Triaged);
            let smallest = &r.mismatches[0];
            parts.push(format!(
                "minimal counterexample at the class minimum n={n}: {:?}",
                smallest.graph.replace('\n', " ").trim()
            ));
        } else {
            status = Status::Fail;
        }
    }
    // the configuration does not recur one size up
    let r = report("PROP-4.10", Some(11), Some(ModeKind::Exhaustive), None);
    parts.push(summary(&r));
    if !r.pass {
        status = Status::Fail;
    }
    Line {
        status,
        detail: parts.join("; "),
    }
}

impl Status {
    fn max_with(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Triaged, _) | (_, Status::Triaged) => Status::Triaged,
            _ => Status::Pass,
        }
    }
}

fn criterion_6() -> Line {
    let started = Instant::now();
    let r = report("THM-1.7", Some(14), Some(ModeKind::Sampled), Some(1_000));
    let elapsed = started.elapsed();
    let negatives = r.instances_checked - r.positives;
    pass_if(
        r.pass && r.instances_checked == 1_000 && negatives > 0 && elapsed < Duration::from_secs(600),
        format!("{} negatives={negatives} in {:.2?}", summary(&r), elapsed),
    )
}

fn criterion_7() -> Line {
    let started = Instant::now();
    let r = report("THM-3.1", Some(6), Some(ModeKind::Exhaustive), None);
    let elapsed = started.elapsed();
    pass_if(
        r.pass && r.positives > 0 && elapsed < Duration::from_secs(60),
        format!("{} over 32768 graphs in {:.2?}", summary(&r), elapsed),
    )
}

fn criterion_8() -> Line {
    let mut disagreements = 0u64;
    let mut exhaustive = 0u64;
    for n in 1..=6usize {
        for code in 0u64..1 << (n * (n - 1) / 2) {
            let g = graph_from_code(n, code);
            exhaustive += 1;
            if is_indecomposable(&g) != oracle_indecomposable(&g).expect("n <= 16") {
                disagreements += 1;
            }
        }
    }
    for i in 0..10_000u64 {
        let mut rng = rng_for(SEED, i);
        let n = rng.gen_range(7..=12);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        if is_indecomposable(&g) != oracle_indecomposable(&g).expect("n <= 16") {
            disagreements += 1;
        }
    }
    let minimality: Vec<VerificationReport> = (4..=7)
        .map(|n| report("THM-1.4", Some(n), Some(ModeKind::Exhaustive), None))
        .collect();
    let ok = disagreements == 0 && minimality.iter().all(|r| r.pass);
    let parts: Vec<String> = minimality.iter().map(summary).collect();
    pass_if(
        ok,
        format!(
            "indecomposability vs oracle: {exhaustive} exhaustive + 10000 random, {disagreements} disagreements; minimality: {}",
            parts.join("; ")
        ),
    )
}

fn criterion_9() -> Line {
    let sampled = [
        ("THM-1.1", 12, 2_000),
        ("THM-1.2", 10, 2_000),
        ("THM-1.3", 12, 2_000),
        ("THM-2.1", 10, 5_000),
        ("COR-2.2", 10, 5_000),
        ("COR-3.4", 10, 100_000),
        ("REMARK-2.4", 14, 10_000),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (id, n, count) in sampled {
        let r = report(id, Some(n), Some(ModeKind::Sampled), Some(count));
        ok &= r.pass && r.instances_checked > 0;
        parts.push(summary(&r));
    }
    for n in 10..=13 {
        let r = report("REMARK-4.9", Some(n), None, None);
        ok &= r.pass && r.instances_checked as usize == n - 5;
        parts.push(summary(&r));
    }
    pass_if(ok, parts.join("; "))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, fn() -> Line); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = Vec::new();
    for (k, f) in criteria {
        let line = f();
        let tag = match line.status {
            Status::Pass => "PASS",
            Status::Triaged => "TRIAGED",
            Status::Fail => "FAIL",
        };
        writeln!(std::io::stderr(), "criterion {k}: {tag} {}", line.detail).expect("stderr");
        if line.status == Status::Fail {
            failed.push(k);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
