use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use dgs_core::engine::{
    almost_controllable_solutions, classify as classify_graph, controllable_q,
    decide_dgs_with_mates, verify_certificate, DgsCertificate, EngineError, Family, Verdict,
};
use dgs_core::graph::{enumerate_all_graphs, Graph};
use dgs_core::linalg::RatMatrix;
use dgs_core::scan;
use dgs_core::walk::WalkBundle;

use crate::input::{graphs_from, parse_graph_arg, read_corpus, Numbered};
use crate::Failure;

fn joined<T: Display>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn classify(file: Option<PathBuf>, matrix: Option<String>) -> Result<(), Failure> {
    let graphs = graphs_from(file.as_deref(), matrix.as_deref())?;
    let reports = graphs
        .par_iter()
        .map(report)
        .collect::<Result<Vec<_>, Failure>>()?;
    for r in reports {
        print!("{r}");
    }
    Ok(())
}

fn report(entry: &Numbered) -> Result<String, Failure> {
    let g = &entry.graph;
    let class = classify_graph(g)?;
    let bundle = WalkBundle::new(g).map_err(EngineError::from)?;
    let mut out = format!("graph (line {}): {}\n", entry.line, g.to_graph6());
    out += &format!("  order: {}\n", g.order());
    out += &format!("  family: {}\n", class.family);
    out += &format!("  rank_q: {}\n  rank_2: {}\n", class.rank_q, bundle.rank_2);
    out += &format!("  snf: {}\n", joined(&class.snf.invariant_factors));
    match &class.twins {
        Some(t) => {
            let kind = if t.adjacent {
                "adjacent"
            } else {
                "non-adjacent"
            };
            out += &format!(
                "  twins: {} {} ({kind}, lambda1 = {})\n",
                t.tau + 1,
                t.tau_prime + 1,
                t.lambda1
            );
        }
        None => out += "  twins: none\n",
    }
    if let (Some(xi), Some(scaled)) = (&bundle.xi, &bundle.xi_scaled) {
        out += &format!("  xi: {}\n  xi_scaled: {}\n", joined(xi), joined(scaled));
    }
    match &class.b {
        Some(b) if class.in_f_n_star => out += &format!("  F_n: yes, b = {b} (F_n*)\n"),
        Some(b) => out += &format!("  F_n: yes, b = {b}\n"),
        None => out += "  F_n: no\n",
    }
    Ok(out)
}

pub struct CheckOptions {
    pub file: Option<PathBuf>,
    pub matrix: Option<String>,
    pub mate_corpus: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub json: bool,
    pub timestamp: bool,
}

fn unix_timestamp() -> String {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

pub fn check_dgs(opts: CheckOptions) -> Result<(), Failure> {
    let graphs = graphs_from(opts.file.as_deref(), opts.matrix.as_deref())?;
    let pool: Vec<Graph> = match &opts.mate_corpus {
        Some(path) => read_corpus(path)?.into_iter().map(|e| e.graph).collect(),
        None => Vec::new(),
    };
    let mut certs = graphs
        .par_iter()
        .map(|e| -> Result<DgsCertificate, Failure> {
            let c = decide_dgs_with_mates(&e.graph, &pool)?;
            verify_certificate(&c, &e.graph)
                .map_err(|d| Failure::Invariant(format!("fresh certificate: {d}")))?;
            Ok(c)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if opts.timestamp {
        let ts = unix_timestamp();
        certs
            .iter_mut()
            .for_each(|c| c.timestamp = Some(ts.clone()));
    }

    if let Some(dir) = &opts.out_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
        for (k, c) in certs.iter().enumerate() {
            let path = dir.join(format!("cert-{}.json", k + 1));
            fs::write(&path, c.to_json() + "\n")
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        }
    }

    if opts.json {
        let doc = serde_json::to_string_pretty(&certs).expect("certificates serialize");
        println!("{doc}");
        return Ok(());
    }
    println!("line\tgraph6\tverdict\tb\tdetail");
    for (e, c) in graphs.iter().zip(&certs) {
        let b = c.b.as_ref().map_or("-".to_string(), |b| b.to_string());
        let detail = summary_detail(c);
        println!("{}\t{}\t{}\t{b}\t{detail}", e.line, c.graph, c.verdict);
    }
    Ok(())
}

fn summary_detail(c: &DgsCertificate) -> String {
    match c.verdict {
        Verdict::NotDgs => {
            let ce = c.counterexample.as_ref().expect("NOT_DGS carries a mate");
            match &ce.level {
                Some(l) => format!("mate {} at level {l}", ce.mate),
                None => format!("mate {}", ce.mate),
            }
        }
        Verdict::Unknown => c.reason.clone().unwrap_or_default(),
        _ => {
            let primes: Vec<String> = c
                .evidence
                .iter()
                .map(|e| match (&e.mainp, e.addcon_holds) {
                    (_, true) => e.p.to_string(),
                    (Some(m), false) => format!("{} (refuted: {:?})", e.p, m.refuted_by.unwrap()),
                    (None, false) => unreachable!("failing prime without quadratic test"),
                })
                .collect();
            if primes.is_empty() {
                "b = 1".into()
            } else {
                format!("primes {}", primes.join(", "))
            }
        }
    }
}

pub fn census(n: Option<usize>, corpus: Option<PathBuf>) -> Result<(), Failure> {
    let row = match (n, corpus) {
        (Some(n), None) => scan::census_of_order(n)?,
        (None, Some(path)) => {
            let graphs: Vec<Graph> = read_corpus(&path)?.into_iter().map(|e| e.graph).collect();
            scan::census(&graphs)?
        }
        _ => return Err(Failure::Usage("give an order or --corpus".into())),
    };
    println!("n\ttotal\th_n\th_n_asym\th_n_sym");
    println!(
        "{}\t{}\t{}\t{}\t{}",
        row.n, row.total_graphs, row.h_n, row.h_n_asym, row.h_n_sym
    );
    Ok(())
}

fn print_matrix(name: &str, q: &RatMatrix) {
    let cells: Vec<Vec<String>> = (0..q.rows())
        .map(|i| (0..q.cols()).map(|j| q[(i, j)].to_string()).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    println!("{name} =");
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        println!("  {}", line.join(" "));
    }
}

pub fn q_matrix(g: &str, h: &str) -> Result<(), Failure> {
    let g = parse_graph_arg(g)?;
    let h = parse_graph_arg(h)?;
    if g.order() != h.order() {
        return Err(Failure::Usage(format!(
            "orders differ ({} vs {})",
            g.order(),
            h.order()
        )));
    }
    let family = classify_graph(&g)?.family;
    match family {
        Family::Controllable => {
            let q = controllable_q(&g, &h)?;
            print_matrix("Q", &q);
            println!("level: {}", q.denominator_lcm());
        }
        f if f.is_almost_controllable() => {
            let s = almost_controllable_solutions(&g, &h)?;
            print_matrix("Q0", &s.q0);
            print_matrix("Q1", &s.q1);
            println!("levels: {} {}", s.level0, s.level1);
        }
        _ => {
            return Err(Failure::Usage(
                "G is neither controllable nor almost controllable".into(),
            ))
        }
    }
    Ok(())
}

pub fn mate_scan(corpus: Option<PathBuf>, order: Option<usize>) -> Result<(), Failure> {
    let entries: Vec<Numbered> = match (corpus, order) {
        (Some(path), None) => read_corpus(&path)?,
        (None, Some(n)) => enumerate_all_graphs(n)
            .map_err(EngineError::from)?
            .into_iter()
            .enumerate()
            .map(|(i, graph)| Numbered { line: i + 1, graph })
            .collect(),
        _ => return Err(Failure::Usage("give --corpus or --order".into())),
    };
    let graphs: Vec<Graph> = entries.iter().map(|e| e.graph.clone()).collect();
    let pairs = scan::mate_scan(&graphs)?;
    println!("line\tline\tgraph6\tgraph6\tlevels");
    for p in &pairs {
        let levels = p
            .levels
            .as_ref()
            .map_or("-".to_string(), |(a, b)| format!("{a} {b}"));
        println!(
            "{}\t{}\t{}\t{}\t{levels}",
            entries[p.first].line,
            entries[p.second].line,
            graphs[p.first].to_graph6(),
            graphs[p.second].to_graph6()
        );
    }
    println!("{} pair(s)", pairs.len());
    Ok(())
}

pub fn verify_cert(path: &Path) -> Result<(), Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let cert = DgsCertificate::from_json(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let g = Graph::parse_graph6(&cert.graph)
        .map_err(|e| Failure::Usage(format!("certificate graph: {e}")))?;
    verify_certificate(&cert, &g).map_err(|d| Failure::Usage(format!("discrepancy: {d}")))?;
    println!("certificate ok: {} {}", cert.graph, cert.verdict);
    Ok(())
}
