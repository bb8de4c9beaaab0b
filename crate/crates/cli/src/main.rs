use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use fusionloc::engine::groupfile::{self, GroupFile};
use fusionloc::engine::local::sylow;
use fusionloc::engine::yg::y_subgroup;
use fusionloc::engine::{FiniteGroup, Perm, PermGroup, Subgroup};
use fusionloc::fusion::{describe, FusionSystem, SubgroupClassReport};
use fusionloc::g2study::{
    assemble_tilde_c, assemble_variant, build_q8_central_product, ingest_autg23, t_solutions,
    uniqueness_tilde_c, verify_tilde_c,
};
use fusionloc::locality::{Locality, ObjectSet, Preset, VerifyOptions};
use fusionloc::report::{ReportNode, Status};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "fusionloc",
    version,
    about = "Fusion systems, localities and large subgroups of small permutation groups"
)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the subgroups of a Sylow p-subgroup under F_S(G).
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Named subgroup block to test for largeness.
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Build the locality L_Δ(G) and check it.
    Locality {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// centric, char-p, delta-star, subcentric, or seed=NAME[,NAME...]
        #[arg(long, default_value = "centric", value_parser = parse_objects)]
        objects: Objects,
        /// Longest word checked against the partial group axioms.
        #[arg(long, default_value_t = 3)]
        word_cap: usize,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        /// Run the locality axiom checks.
        #[arg(long)]
        verify: bool,
        /// Factor an element, in cycle notation, through object normalizers.
        #[arg(long)]
        factorize: Option<String>,
        /// Named subgroup block for the repleteness and largeness flags.
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Assemble and check the group C̃ of order 1152.
    G2 {
        /// Aut(G₂(3)) generator file with `M_G` and `C_G` blocks.
        #[arg(long)]
        ingest: Option<PathBuf>,
    },
}

#[derive(Clone, Debug)]
enum Objects {
    Preset(Preset),
    Seeds(Vec<String>),
}

fn parse_objects(s: &str) -> Result<Objects, String> {
    if let Some(rest) = s.strip_prefix("seed=") {
        let names: Vec<String> = rest
            .split(',')
            .map(str::trim)
            .filter(|n| !n.is_empty())
            .map(String::from)
            .collect();
        if names.is_empty() {
            return Err("seed= needs at least one subgroup name".into());
        }
        return Ok(Objects::Seeds(names));
    }
    Preset::ALL
        .into_iter()
        .find(|p| p.name() == s)
        .map(Objects::Preset)
        .ok_or_else(|| format!("unknown object set {s:?}; expected centric, char-p, delta-star, subcentric or seed=NAME"))
}

/// A report plus command-specific data shown above it.
struct Output {
    header: String,
    sections: Vec<String>,
    data: Value,
    report: ReportNode,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = if cli.json {
        let doc = json!({ "header": out.header, "data": out.data, "report": out.report });
        serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
    } else {
        let mut text = out.header.clone() + "\n";
        for s in &out.sections {
            text += &format!("\n{s}\n");
        }
        text + "\n" + &out.report.to_string()
    };
    // A closed pipe (`| head`) is not an error worth reporting.
    let _ = std::io::stdout().write_all(text.as_bytes());
    if out.report.status == Status::Fail {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cmd: &Command) -> anyhow::Result<Output> {
    match cmd {
        Command::Analyze { file, p, subgroup } => analyze(file, *p, subgroup.as_deref()),
        Command::Locality {
            file,
            p,
            objects,
            word_cap,
            seed,
            verify,
            factorize,
            subgroup,
        } => {
            let opts = VerifyOptions {
                word_cap: *word_cap,
                seed: *seed,
                ..VerifyOptions::default()
            };
            locality(
                file,
                *p,
                objects,
                &opts,
                *verify,
                factorize.as_deref(),
                subgroup.as_deref(),
            )
        }
        Command::G2 { ingest } => g2(ingest.as_deref()),
    }
}

fn load(path: &Path) -> anyhow::Result<(GroupFile, FiniteGroup)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = groupfile::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    let g = FiniteGroup::from_perm_group(&PermGroup::new(file.degree, file.generators.clone())?)?;
    Ok((file, g))
}

/// The named block as a subgroup, conjugated into `s` when it is a p-subgroup elsewhere.
fn named_subgroup(
    file: &GroupFile,
    g: &FiniteGroup,
    s: &Subgroup,
    name: &str,
) -> anyhow::Result<Subgroup> {
    let perms = file
        .subgroup(name)
        .ok_or_else(|| anyhow!("no `subgroup {name}` block in the file"))?;
    let elems = perms
        .iter()
        .map(|p| {
            g.index_of(p)
                .ok_or_else(|| anyhow!("generator {p} of {name} is not in G"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let h = g.generate(&elems);
    if h.is_subgroup_of(s) {
        return Ok(h);
    }
    g.elements()
        .map(|x| g.conj_subgroup(&h, x))
        .find(|c| c.is_subgroup_of(s))
        .ok_or_else(|| anyhow!("{name} is not conjugate into the Sylow subgroup"))
}

fn class_table(rows: &[SubgroupClassReport]) -> String {
    let mut out = format!(
        "{:<36} {:>5} {:>5}  {:<4} {:<4} {:<4} {:<4} {:<4} {:<4}",
        "subgroup", "order", "class", "fn", "cen", "rad", "ess", "wcl", "scl"
    )
    .trim_end()
    .to_string();
    out.push('\n');
    let mark = |b: bool| if b { "yes" } else { "-" };
    for r in rows {
        out.push_str(
            format!(
                "{:<36} {:>5} {:>5}  {:<4} {:<4} {:<4} {:<4} {:<4} {:<4}",
                r.label,
                r.order,
                r.class_size,
                mark(r.fully_normalized),
                mark(r.centric),
                mark(r.radical),
                mark(r.essential),
                mark(r.weakly_closed),
                mark(r.strongly_closed)
            )
            .trim_end(),
        );
        out.push('\n');
    }
    out.trim_end().to_string()
}

fn analyze(path: &Path, p: u32, name: Option<&str>) -> anyhow::Result<Output> {
    let (file, g) = load(path)?;
    let all = g.whole();
    let s = sylow(&g, &all, p);
    let f = FusionSystem::new(&g, &all, &s, p)?;
    let rows = f.classify_subgroups()?;
    let essentials: Vec<String> = f
        .essential_subgroups()?
        .iter()
        .map(|r| describe(&g, r))
        .collect();
    let y_g = match y_subgroup(&g, &all, p) {
        Ok(y) => describe(&g, &y),
        Err(e) => format!("unavailable: {e}"),
    };
    let mut children = vec![ReportNode::leaf(
        "Sylow subgroup",
        true,
        Some(format!("order {}", s.order())),
    )];
    let mut data = json!({
        "order": g.order(),
        "p": p,
        "sylow_order": s.order(),
        "classes": rows,
        "y_g": y_g,
        "essentials": essentials,
    });
    if let Some(name) = name {
        let q = named_subgroup(&file, &g, &s, name)?;
        let rep = f.is_large(&q)?;
        let mut leaves = vec![ReportNode::leaf("C_S(Q) ≤ Q", rep.self_centralizing, None)];
        for (crit, v) in &rep.criteria {
            let mut leaf =
                ReportNode::leaf(format!("criterion ({crit})"), v.holds, v.witness.clone());
            leaf.timing_ms = v.millis;
            leaves.push(leaf);
        }
        children.push(ReportNode::group(
            format!("{name} = {} large in F_S(G)", describe(&g, &q)),
            leaves,
        ));
        data["largeness"] = serde_json::to_value(&rep)?;
    }
    let sections = vec![
        class_table(&rows),
        format!("Y_G: {y_g}"),
        if essentials.is_empty() {
            "essential subgroups: none".into()
        } else {
            format!("essential subgroups: {}", essentials.join("; "))
        },
    ];
    Ok(Output {
        header: format!(
            "fusionloc analyze {} (|G| = {}, p = {p})",
            path.display(),
            g.order()
        ),
        sections,
        data,
        report: ReportNode::group("analyze", children),
    })
}

fn locality(
    path: &Path,
    p: u32,
    objects: &Objects,
    opts: &VerifyOptions,
    verify: bool,
    factorize: Option<&str>,
    name: Option<&str>,
) -> anyhow::Result<Output> {
    let (file, g) = load(path)?;
    let all = g.whole();
    let s = sylow(&g, &all, p);
    let f = FusionSystem::new(&g, &all, &s, p)?;
    let (objects, label) = match objects {
        Objects::Preset(preset) => (ObjectSet::preset(&f, *preset)?, preset.name().to_string()),
        Objects::Seeds(names) => {
            let seeds = names
                .iter()
                .map(|n| named_subgroup(&file, &g, &s, n))
                .collect::<anyhow::Result<Vec<_>>>()?;
            (
                ObjectSet::from_seeds(&f, &seeds)?,
                format!("seed={}", names.join(",")),
            )
        }
    };
    let q = name.map(|n| named_subgroup(&file, &g, &s, n)).transpose()?;
    let l = Locality::build(f, objects)?;
    let mut children = vec![ReportNode::leaf(
        "L_Δ(G) built",
        true,
        Some(format!(
            "|L| = {}, |Δ| = {}, |S| = {}",
            l.len(),
            l.objects.len(),
            s.order()
        )),
    )];
    if verify {
        children.push(ReportNode::timed(|| {
            l.verify_locality(opts)
                .unwrap_or_else(|e| ReportNode::fail("locality axioms", e.to_string()))
        }));
    }
    let mut data = json!({ "order": g.order(), "p": p, "objects": label, "locality_size": l.len(), "object_count": l.objects.len() });
    if let Some(text) = factorize {
        let perm = Perm::parse_cycles(file.degree, text)?;
        let x = g
            .index_of(&perm)
            .ok_or_else(|| anyhow!("{text} is not in G"))?;
        if !l.contains(x) {
            bail!("{text} is not in L_Δ(G)");
        }
        let fac = l.alperin_factorize(x)?;
        let summary = fac.summary(&l);
        let shown: Vec<String> = summary
            .iter()
            .map(|f| format!("{} ∈ N_L({})", f.element, f.object))
            .collect();
        children.push(ReportNode::leaf(
            format!("factorization of {text}"),
            true,
            Some(shown.join(" · ")),
        ));
        data["factorization"] = serde_json::to_value(&summary)?;
    }
    let flags = l.locality_flags(q.as_ref())?;
    data["properties"] = serde_json::to_value(&flags)?;
    Ok(Output {
        header: format!(
            "fusionloc locality {} (objects {label}, p = {p}, word cap {}, seed {:#x})",
            path.display(),
            opts.word_cap,
            opts.seed
        ),
        sections: vec![format!(
            "properties (informational)\n{}",
            flags.to_string().trim_end()
        )],
        data,
        report: ReportNode::group("locality", children),
    })
}

fn g2(ingest: Option<&Path>) -> anyhow::Result<Output> {
    let q8 = build_q8_central_product()?;
    let inv = q8.invariants()?;
    let matches = q8.matches_direct_product_model()?;
    let inv_ok = inv.order == 32
        && inv.center_order == 2
        && inv.involutions > 11
        && inv.aut_order == 1152
        && inv.out_order == 72
        && matches;
    let inv_text = format!(
        "order {}, |Z| {}, {} involutions, |Aut| {}, |Out| {}, largest elementary abelian {}",
        inv.order,
        inv.center_order,
        inv.involutions,
        inv.aut_order,
        inv.out_order,
        inv.max_elementary_abelian
    );
    let mut children = vec![ReportNode::leaf("Q₈∘Q₈ model", inv_ok, Some(inv_text))];

    let model = assemble_tilde_c()?;
    children.push(ReportNode::timed(|| {
        verify_tilde_c(&model).unwrap_or_else(|e| ReportNode::fail("C̃ structure", e.to_string()))
    }));
    let last = t_solutions().len() - 1;
    let other = assemble_variant(last)?;
    children.push(ReportNode::timed(|| {
        match uniqueness_tilde_c(&model, &other) {
            Ok(_) => ReportNode::leaf(
                "C̃ unique up to isomorphism",
                true,
                Some(format!("variant 0 ≅ variant {last}")),
            ),
            Err(e) => ReportNode::fail("C̃ unique up to isomorphism", e.to_string()),
        }
    }));
    if let Some(path) = ingest {
        children.push(ReportNode::timed(|| {
            ingest_autg23(path)
                .unwrap_or_else(|e| ReportNode::fail("Aut(G₂(3)) ingest", e.to_string()))
        }));
    }
    Ok(Output {
        header: format!("fusionloc g2 (|C̃| = {})", model.group.order()),
        sections: Vec::new(),
        data: json!({ "q8_central_product": inv, "tilde_c_order": model.group.order(), "t_solutions": last + 1 }),
        report: ReportNode::group("g2", children),
    })
}
