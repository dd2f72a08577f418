use std::fs;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use multifold::analysis::{
    distance_data, inner_radius, is_antipodal, is_bipartite_unitrade, is_extended_unitrade,
    is_unitrade, oa_strength1_check, verify_packing, UnitradeCheck,
};
use multifold::bounds::{applicable_bounds, best_bound};
use multifold::constructions::{
    concatenate, diagonal_unitrade, hamming_coset_union, l_star, mds_code, packing96_linear,
    packing96_propelinear, packing96_z2z4, puncture_last, CosetChoice, Packing96,
};
use multifold::partitions::{
    distance_partition, is_equitable, partition_from_unitrade, split_distance3_cell, Equitability,
    Partition,
};
use multifold::search::{classify_extended_unitrades, SearchConfig};
use multifold::{Code, Space, Word};

use crate::{
    read_input, AnalyzeArgs, BoundArgs, CellFormat, ClassifyArgs, Cli, Command, ConstructArgs,
    Failure, Kind, Outcome, Part, PartitionArgs, VerifyArgs,
};

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Verify(a) => verify(a, cli.json),
        Command::Analyze(a) => analyze(a),
        Command::Bound(a) => bound(a, cli.json),
        Command::Construct(a) => construct(a),
        Command::Classify(a) => classify(a, cli.json),
        Command::Partition(a) => partition(a, cli.json),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// No header and no words.
fn is_blank(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .all(|l| l.is_empty() || l.starts_with('#'))
}

fn parse_code(text: &str) -> Result<Code, Failure> {
    Ok(Code::parse(text)?)
}

fn load(path: &Option<std::path::PathBuf>) -> Result<Code, Failure> {
    parse_code(&read_input(path)?)
}

fn unitrade_failure(kind: &str, c: &UnitradeCheck) -> Failure {
    Failure::Check(format!(
        "not {kind}: ball centered at {} meets the set in {} words",
        c.witness
            .as_ref()
            .map(|w| w.to_string())
            .unwrap_or_default(),
        c.count
    ))
}

fn verify(a: &VerifyArgs, json: bool) -> Outcome {
    let text = read_input(&a.input)?;
    let code = if is_blank(&text) {
        None
    } else {
        Some(parse_code(&text)?)
    };
    let Some(code) = code.filter(|c| !c.is_empty()) else {
        if json {
            print_json(&json!({
                "size": 0, "radius": a.r, "lambda": a.lambda,
                "max_coverage": 0, "is_lambda_fold": true, "trivial": true,
            }));
        } else {
            println!("empty code: trivially a {}-fold {}-packing", a.lambda, a.r);
        }
        return Ok(());
    };
    let report = verify_packing(&code, a.lambda, a.r)?;
    let unitrade = if a.unitrade {
        Some(("a unitrade", is_unitrade(&code)))
    } else if a.extended {
        Some(("an extended unitrade", is_extended_unitrade(&code)?))
    } else {
        None
    };
    if json {
        let mut v = to_value(&report);
        if let Some((_, u)) = &unitrade {
            v["unitrade"] = to_value(u);
        }
        print_json(&v);
    } else {
        println!("space H({},{}), {} words", code.n(), code.q(), report.size);
        println!("max coverage {} at {}", report.max_coverage, report.witness);
        if report.duplicate_words.is_empty() {
            println!("no repeated words");
        } else {
            for (w, m) in &report.duplicate_words {
                println!("repeated {w} x{m}");
            }
        }
        println!(
            "{} {}-fold {}-packing",
            if report.is_lambda_fold {
                "is a"
            } else {
                "is NOT a"
            },
            a.lambda,
            a.r
        );
        if let Some((kind, u)) = &unitrade {
            println!("{} {kind}", if u.holds { "is" } else { "is NOT" });
        }
    }
    if !report.is_lambda_fold {
        return Err(Failure::Check(format!(
            "ball centered at {} contains {} codewords, lambda = {}",
            report.witness, report.max_coverage, a.lambda
        )));
    }
    match unitrade {
        Some((kind, u)) if !u.holds => Err(unitrade_failure(kind, &u)),
        _ => Ok(()),
    }
}

fn analyze(a: &AnalyzeArgs) -> Outcome {
    let code = load(&a.input)?;
    if code.is_empty() {
        return Err(Failure::Usage("cannot analyze an empty code".into()));
    }
    let x =
        a.x.as_deref()
            .map(|s| Word::parse(code.space(), s))
            .transpose()?;
    let packing = verify_packing(&code, a.lambda, 1)?;
    let plain = is_unitrade(&code);
    let binary = code.space().is_binary();
    let extended = if binary {
        match is_extended_unitrade(&code) {
            Ok(c) => to_value(&c),
            Err(e) => json!({ "holds": false, "error": e.to_string() }),
        }
    } else {
        Value::Null
    };
    let ext_holds = extended["holds"] == json!(true);
    let bipartite = if ext_holds || plain.holds {
        Some(is_bipartite_unitrade(&code, ext_holds)?.is_bipartite())
    } else {
        None
    };
    let antipodal = if binary {
        Some(is_antipodal(&code)?)
    } else {
        None
    };
    let oa = if binary {
        Some(oa_strength1_check(&code)?)
    } else {
        None
    };
    print_json(&json!({
        "n": code.n(),
        "q": code.q(),
        "size": code.len(),
        "packing": packing,
        "unitrade": { "plain": plain, "extended": extended },
        "bipartite": bipartite,
        "antipodal": antipodal,
        "oa_strength1": oa,
        "inner_radius": inner_radius(&code)?,
        "distributions": distance_data(&code, x.as_ref())?,
    }));
    Ok(())
}

fn bound(a: &BoundArgs, json: bool) -> Outcome {
    let bounds = applicable_bounds(a.n, a.q, a.lambda, a.r, a.even_weight)?;
    let best = best_bound(a.n, a.q, a.lambda, a.r, a.even_weight).ok();
    if json {
        print_json(&json!({
            "n": a.n, "q": a.q, "lambda": a.lambda, "r": a.r, "even_weight": a.even_weight,
            "bounds": bounds,
            "best": best.map(|b| b.to_string()),
        }));
        return Ok(());
    }
    println!("H({},{}), lambda = {}, r = {}", a.n, a.q, a.lambda, a.r);
    println!("{:<22} {:>12} {:>16}  notes", "formula", "value", "exact");
    for b in &bounds {
        let mut notes = b.assumptions.clone();
        if b.vacuous {
            notes.push("vacuous".into());
        }
        if let Some(c) = &b.conjecture {
            notes.push(format!("conjecture: {c}"));
        }
        println!(
            "{:<22} {:>12} {:>16}  {}",
            b.formula_id,
            b.value,
            b.exact.to_string(),
            notes.join("; ")
        );
    }
    if let Some(b) = best {
        println!("best: {b}");
    }
    Ok(())
}

fn need(v: Option<usize>, flag: &str, kind: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("{kind} needs --{flag}")))
}

fn parse_syndromes(s: &str) -> Result<Vec<(usize, usize)>, Failure> {
    s.split(';')
        .map(|pair| {
            let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
            match parts[..] {
                [a, b] => match (a.parse(), b.parse()) {
                    (Ok(a), Ok(b)) => Ok((a, b)),
                    _ => Err(Failure::Usage(format!("bad syndrome {pair:?}"))),
                },
                _ => Err(Failure::Usage(format!("bad syndrome {pair:?}"))),
            }
        })
        .collect()
}

fn pick(p: Packing96, part: Part) -> multifold::Result<Code> {
    match part {
        Part::C4 => Ok(p.c4),
        Part::C0 => Ok(p.c0),
        Part::Packing => puncture_last(&p.c4),
    }
}

fn construct(a: &ConstructArgs) -> Outcome {
    let code = match a.kind {
        Kind::Mds => mds_code(need(a.n, "n", "mds")?, need(a.q, "q", "mds")?)?,
        Kind::Hamming => {
            let q = need(a.q, "q", "hamming")?;
            let choice = match (&a.syndromes, a.lambda) {
                (Some(s), None) => CosetChoice::Syndromes(parse_syndromes(s)?),
                (None, l) => CosetChoice::First(l.unwrap_or(1)),
                (Some(_), Some(_)) => {
                    return Err(Failure::Usage("use either --lambda or --syndromes".into()))
                }
            };
            hamming_coset_union(q, &choice)?
        }
        Kind::Lstar => l_star(need(a.n, "n", "lstar")?)?,
        Kind::Diag => diagonal_unitrade(need(a.n, "n", "diag")?)?,
        Kind::P96a => pick(packing96_linear()?, a.part)?,
        Kind::P96b => pick(packing96_z2z4()?, a.part)?,
        Kind::P96c => pick(packing96_propelinear()?, a.part)?,
        Kind::Concat => {
            let [u, v] = &a.inputs[..] else {
                return Err(Failure::Usage(
                    "concat needs exactly two input files".into(),
                ));
            };
            concatenate(&load(&Some(u.clone()))?, &load(&Some(v.clone()))?)?
        }
    };
    if !matches!(a.kind, Kind::Concat) && !a.inputs.is_empty() {
        return Err(Failure::Usage("only concat takes input files".into()));
    }
    match &a.output {
        Some(p) => fs::write(p, code.to_text())
            .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => print!("{}", code.to_text()),
    }
    Ok(())
}

fn classify(a: &ClassifyArgs, json: bool) -> Outcome {
    let mut cfg = SearchConfig::new(a.n);
    cfg.nonbipartite_only = a.nonbipartite;
    cfg.max_cardinality = a.max_cardinality;
    cfg.checkpoint = a.checkpoint.clone();
    let result = classify_extended_unitrades(&cfg)?;
    let width = result.classes.len().to_string().len().max(2);
    let files: Vec<String> = (1..=result.classes.len())
        .map(|i| format!("class_{i:0width$}.code"))
        .collect();
    let manifest = json!({
        "n": a.n,
        "nonbipartite_only": a.nonbipartite,
        "max_cardinality": a.max_cardinality,
        "count": result.classes.len(),
        "primary_classes": result.primary_classes,
        "states_explored": result.states_explored,
        "classes": result.classes.iter().zip(&files).map(|(k, f)| json!({
            "file": f,
            "cardinality": k.cardinality,
            "flags": k.flags,
        })).collect::<Vec<_>>(),
    });
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
        for (k, f) in result.classes.iter().zip(&files) {
            fs::write(dir.join(f), k.representative.to_text())?;
        }
        fs::write(
            dir.join("manifest.json"),
            serde_json::to_string_pretty(&manifest).expect("serializable") + "\n",
        )?;
    }
    if json {
        print_json(&manifest);
        return Ok(());
    }
    println!(
        "n = {}: {} classes ({} primary classes in total, {} states)",
        a.n,
        result.classes.len(),
        result.primary_classes,
        result.states_explored
    );
    for (k, f) in result.classes.iter().zip(&files) {
        let fl = &k.flags;
        let mut tags = vec![if fl.bipartite {
            "bipartite"
        } else {
            "non-bipartite"
        }];
        if fl.antipodal {
            tags.push("antipodal");
        }
        if fl.constant_weight_translate {
            tags.push("constant-weight");
        }
        tags.push(&fl.reducibility);
        println!("{f} {:>5}  {}", k.cardinality, tags.join(", "));
    }
    Ok(())
}

fn cell_json(c: &Code, format: CellFormat) -> Value {
    match format {
        CellFormat::Words => json!(c.iter().map(|w| w.to_string()).collect::<Vec<_>>()),
        CellFormat::Digest => {
            let hash = Sha256::digest(c.to_text().as_bytes());
            let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
            json!({ "size": c.len(), "sha256": hex })
        }
    }
}

fn partition(a: &PartitionArgs, json: bool) -> Outcome {
    let code = load(&a.input)?;
    let mut translation: Option<Word> = None;
    let p: Partition = if a.from_unitrade {
        match partition_from_unitrade(&code)? {
            Some(u) => {
                translation = Some(u.translation);
                u.partition
            }
            None => {
                return Err(Failure::Check(
                    "the rebuilt partition is not equitable with the five-cell matrix".into(),
                ))
            }
        }
    } else if let Some(c4) = &a.c4 {
        split_distance3_cell(&code, &load(&Some(c4.clone()))?)?
    } else {
        distance_partition(&code)?
    };
    let eq = is_equitable(&p);
    let array = eq.matrix().and_then(|m| m.intersection_array());
    if json {
        let mut v = json!({
            "n": p.space().n(),
            "q": p.space().q(),
            "sizes": p.cell_sizes(),
            "cells": p.cells().iter().map(|c| cell_json(c, a.cells)).collect::<Vec<_>>(),
            "equitable": eq.matrix().is_some(),
            "matrix": eq.matrix().map(|m| &m.s),
            "intersection_array": array.as_ref().map(|x| x.to_string()),
        });
        if let Equitability::NotEquitable(w) = &eq {
            v["witness"] = to_value(w);
        }
        if let Some(t) = &translation {
            v["translation"] = json!(t.to_string());
        }
        print_json(&v);
        return Ok(());
    }
    let space: Space = p.space();
    println!(
        "H({},{}), {} cells, sizes {:?}",
        space.n(),
        space.q(),
        p.num_cells(),
        p.cell_sizes()
    );
    if let Some(t) = &translation {
        println!("translated by {t}");
    }
    match &eq {
        Equitability::Equitable(m) => {
            println!("equitable, intersection matrix:");
            for row in &m.s {
                println!("  {row:?}");
            }
            if let Some(x) = &array {
                println!("intersection array {x}");
            }
        }
        Equitability::NotEquitable(w) => println!(
            "not equitable: in cell {}, {} has profile {:?} but {} has {:?}",
            w.cell, w.reference, w.expected, w.vertex, w.found
        ),
    }
    Ok(())
}
