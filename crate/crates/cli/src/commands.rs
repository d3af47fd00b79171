use std::io::{BufRead, BufReader, Read};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use foaut::automaton::{
    check_completeness_bounded, check_determinism_bounded, complement_deterministic, concatenation, intersection,
    kleene_star, sigma11_to_fo, union, Oracle,
};
use foaut::compile::{encode_foltl, encode_pure_past, monadic_to_finite_control, EncodingReport};
use foaut::emptiness::{decide_finite_control, non_empty_semi, BmcOptions, EmptinessResult};
use foaut::foltl::ClosureMode;
use foaut::frontends::{encode_dmt_with, encode_sfa, load_dmt, load_sfa, DmtOptions};
use foaut::structure::Tables;
use foaut::theory::TheoryFile;
use foaut::word::WordFile;
use foaut::{parse_formula, Automaton, Domains, Signature, Structure, Theory};
use serde::Deserialize;

use crate::config::Config;
use crate::{Cli, Command, Frontend, Mode, Op, Procedure};

/// Tag leading every verdict line.
pub const VERDICT_SCHEMA: &str = "foaut-verdict/1";

fn read(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_automaton(path: &Path) -> Result<Automaton> {
    Automaton::from_json(&read(path)?).with_context(|| format!("loading automaton {}", path.display()))
}

fn write_output(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// The given domains plus `bound` elements for every state sort they miss.
fn with_state_sorts(a: &Automaton, domains: &Domains, bound: usize) -> Result<Domains> {
    let missing: Vec<&str> = a
        .state_signature()
        .sorts()
        .iter()
        .map(String::as_str)
        .filter(|s| domains.size(s).is_none())
        .collect();
    Ok(domains.merge(&Domains::with_sizes(missing.into_iter().map(|s| (s, bound))))?)
}

pub fn dispatch(cli: Cli) -> Result<u8> {
    let cfg = Config::resolve(&cli.overrides)?;
    match cli.command {
        Command::Compile {
            formula,
            signature,
            mode,
            output,
        } => compile(&formula, &signature, mode, output.as_ref()),
        Command::Check {
            automaton,
            theory,
            procedure,
            continue_on_unknown,
        } => check(&cfg, &automaton, theory.as_deref(), procedure, continue_on_unknown),
        Command::Run { automaton, word } => run(&cfg, &automaton, &word),
        Command::Step { automaton, trace } => step(&cfg, &automaton, &trace),
        Command::Ops {
            op,
            inputs,
            deterministic,
            sigma11,
            output,
        } => ops(&cfg, op, &inputs, deterministic, sigma11, output.as_ref()),
        Command::Encode {
            kind,
            input,
            fin,
            output,
        } => encode(&cfg, kind, &input, fin, output.as_ref()),
    }
}

fn compile(formula: &Path, signature: &Path, mode: Mode, output: Option<&PathBuf>) -> Result<u8> {
    let sig: Signature = serde_json::from_str(&read(signature)?).context("loading signature")?;
    let phi = parse_formula(read(formula)?.trim(), &sig)?;
    let (a, closure_mode) = match mode {
        Mode::Foltl => (encode_foltl(&phi, &sig)?, ClosureMode::FutureRooted),
        Mode::Purepast => (encode_pure_past(&phi, &sig)?, ClosureMode::PastRooted),
    };
    let report = EncodingReport::of(&phi, closure_mode);
    eprintln!("closure {} surrogates {}", report.closure, report.surrogates);
    write_output(output, &a.to_json())?;
    Ok(0)
}

fn load_theory(cfg: &Config, path: Option<&Path>, sig: &Signature) -> Result<Theory> {
    let mut theory = match path {
        Some(p) => {
            let file: TheoryFile = serde_json::from_str(&read(p)?).context("loading theory")?;
            file.into_theory(sig)?
        }
        None => Theory::empty(),
    };
    if let Some(l) = &cfg.logic {
        theory.smt.logic = l.clone();
    }
    Ok(theory)
}

pub fn verdict_line(r: &EmptinessResult) -> (String, u8) {
    let (body, code) = match r {
        EmptinessResult::NotEmpty { k, .. } => (format!("NOTEMPTY {k}"), 0),
        EmptinessResult::Empty { depth } => (format!("EMPTY {depth}"), 1),
        EmptinessResult::BoundExhausted { k_max } => (format!("BOUND {k_max}"), 2),
        EmptinessResult::Inconclusive { k, reason } => {
            let reason = reason.split_whitespace().collect::<Vec<_>>().join(" ");
            (format!("INCONCLUSIVE k={k} {reason}"), 3)
        }
    };
    (format!("{VERDICT_SCHEMA} {body}"), code)
}

fn check(cfg: &Config, path: &Path, theory: Option<&Path>, procedure: Procedure, continue_on_unknown: bool) -> Result<u8> {
    let a = load_automaton(path)?;
    let theory = load_theory(cfg, theory, a.word_signature())?;
    let solver = cfg.solver()?;
    let opts = BmcOptions {
        k_max: cfg.kmax,
        continue_on_unknown,
        dump_dir: cfg.dump_smt.clone(),
    };
    let result = match procedure {
        Procedure::Semi => non_empty_semi(&a, &theory, &solver, &opts)?,
        Procedure::FiniteControl => decide_finite_control(&a, &theory, &solver, &opts)?,
    };
    if let EmptinessResult::NotEmpty { witness, .. } = &result {
        for (name, value) in &witness.values {
            eprintln!("witness {name} = {value}");
        }
        for d in &witness.diagnostics {
            eprintln!("note: {d}");
        }
    }
    let (line, code) = verdict_line(&result);
    println!("{line}");
    Ok(code)
}

fn run(cfg: &Config, path: &Path, word: &Path) -> Result<u8> {
    let a = load_automaton(path)?;
    let file: WordFile = serde_json::from_str(&read(word)?).context("loading word")?;
    let w = file.into_word(Some(a.word_signature()))?;
    if w.signature() != a.word_signature() {
        bail!("the word is not over the automaton's word signature");
    }
    let domains = with_state_sorts(&a, w.domains(), cfg.domain_bound)?;
    let accepted = Oracle::new(&a, &domains)?.accepts(&w)?;
    println!("{}", if accepted { "accept" } else { "reject" });
    Ok(if accepted { 0 } else { 1 })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceHeader {
    domains: Domains,
}

fn step(cfg: &Config, path: &Path, trace: &Path) -> Result<u8> {
    let a = load_automaton(path)?;
    let reader: Box<dyn BufRead> = if trace == Path::new("-") {
        Box::new(BufReader::new(std::io::stdin()))
    } else {
        Box::new(BufReader::new(
            std::fs::File::open(trace).with_context(|| format!("opening {}", trace.display()))?,
        ))
    };
    let mut lines = reader.lines().enumerate().filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty()));
    let Some((_, header)) = lines.next() else {
        bail!("trace has no header line");
    };
    let header: TraceHeader = serde_json::from_str(&header?).context("trace header")?;
    let domains = with_state_sorts(&a, &header.domains.for_signature(a.word_signature())?, cfg.domain_bound)?;
    let bound = domains.sorts().filter_map(|s| domains.size(s)).max().unwrap_or(1);
    if let foaut::automaton::BoundedCheck::Fails(c) = check_determinism_bounded(&a, bound)? {
        bail!("automaton is not deterministic up to domain size {bound}: {c}");
    }
    let oracle = Oracle::new(&a, &domains)?;
    let sig = std::sync::Arc::new(a.word_signature().clone());
    let letter_domains = std::sync::Arc::new(domains.for_signature(&sig)?);
    let mut current: Option<u32> = None;
    let mut last_letter: Option<usize> = None;
    let mut first_rigid: Option<Structure> = None;
    let rigid_sig = std::sync::Arc::new(a.word_signature().restrict(|s| s.rigid));
    for (i, (lineno, line)) in lines.enumerate() {
        let tables: Tables = serde_json::from_str(&line?).with_context(|| format!("trace line {}", lineno + 1))?;
        let letter = Structure::from_tables(sig.clone(), letter_domains.clone(), &tables)?;
        let rigid = letter.reduct(rigid_sig.clone())?;
        match &first_rigid {
            None => first_rigid = Some(rigid),
            Some(r) if *r != rigid => bail!("letter {i} changes a rigid word symbol"),
            Some(_) => {}
        }
        let l = oracle.intern(&letter)?;
        let from = match (i, current) {
            (0, _) => oracle.initial_states(l).first().copied(),
            (_, c) => c,
        };
        current = from.and_then(|s| oracle.successors(s, l).first().copied());
        last_letter = Some(l);
        match current {
            Some(s) => println!("{i} {}", serde_json::to_string(&oracle.states()[s as usize].tables())?),
            None => println!("{i} dead"),
        }
    }
    let accepted = match (last_letter, current) {
        (None, _) => oracle.accepts_empty()?,
        (Some(l), Some(s)) => oracle.is_final(s, l),
        (Some(_), None) => false,
    };
    println!("{}", if accepted { "accept" } else { "reject" });
    Ok(if accepted { 0 } else { 1 })
}

fn ops(cfg: &Config, op: Op, inputs: &[PathBuf], deterministic: bool, sigma11: bool, output: Option<&PathBuf>) -> Result<u8> {
    let arity = match op {
        Op::Union | Op::Intersect | Op::Concat => 2,
        Op::Star | Op::Complement | Op::Monadic2fc => 1,
    };
    if inputs.len() != arity {
        bail!("{op:?} takes {arity} input(s), got {}", inputs.len());
    }
    let autos = inputs.iter().map(|p| load_automaton(p)).collect::<Result<Vec<_>>>()?;
    let second_order = match op {
        Op::Concat => Some(concatenation(&autos[0], &autos[1])?),
        Op::Star => Some(kleene_star(&autos[0])?),
        _ => None,
    };
    if let Some(so) = second_order {
        let text = if sigma11 {
            serde_json::to_string_pretty(&so.to_file())?
        } else {
            sigma11_to_fo(&so)?.to_json()
        };
        write_output(output, &text)?;
        return Ok(0);
    }
    let result = match op {
        Op::Union => union(&autos[0], &autos[1])?,
        Op::Intersect => intersection(&autos[0], &autos[1])?,
        Op::Monadic2fc => monadic_to_finite_control(&autos[0])?,
        Op::Complement => {
            if !deterministic {
                bail!("complement is only correct for deterministic complete automata; pass --deterministic to attest");
            }
            let bound = cfg.domain_bound;
            if let foaut::automaton::BoundedCheck::Fails(c) = check_determinism_bounded(&autos[0], bound)? {
                eprintln!("warning: determinism fails up to domain size {bound}: {c}");
            }
            if let foaut::automaton::BoundedCheck::Fails(c) = check_completeness_bounded(&autos[0], bound)? {
                eprintln!("warning: completeness fails up to domain size {bound}: {c}");
            }
            complement_deterministic(&autos[0])?
        }
        Op::Concat | Op::Star => unreachable!("handled above"),
    };
    write_output(output, &result.to_json())?;
    Ok(0)
}

fn encode(cfg: &Config, kind: Frontend, input: &Path, fin: Option<String>, output: Option<&PathBuf>) -> Result<u8> {
    let text = read(input)?;
    let a = match kind {
        Frontend::Sfa => {
            if fin.is_some() {
                bail!("--final applies to DMT inputs only");
            }
            encode_sfa(&load_sfa(&text)?)?
        }
        Frontend::Dmt => {
            let opts = DmtOptions {
                exactly_one: cfg.exactly_one_action,
                fin: fin.unwrap_or_else(|| DmtOptions::default().fin),
            };
            encode_dmt_with(&load_dmt(&text)?, &opts)?
        }
    };
    eprintln!("class {}", a.classify());
    write_output(output, &a.to_json())?;
    Ok(0)
}
