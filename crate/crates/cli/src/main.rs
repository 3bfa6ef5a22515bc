//! `steinerq`: command-line access to the free Steiner quasigroup calculus.
//!
//! Every command prints `key: value` lines. Exit status is 0 on success, 1
//! when the library reports an error for the given input, and 2 on a usage
//! error.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use steinerq::automorph::{
    all_elementary, elementary, is_irreducible, preserves_reduced, tame_decompose, verify_tame,
    ElementaryAuto, Irreducibility, TameDecomposition,
};
use steinerq::model::{ClosureOptions, FiniteModel, Refutation};
use steinerq::morphisms::{
    certify_independent, classify_endo, injectivity_condition, invert_single, occurrences,
    substitution_check, EndoClass, EndoSpec, IndependenceCertificate, Injectivity,
};
use steinerq::psts::{builtin_sts, from_free_levels, hf_base, hf_order, prefix_deltas, HfOrdering, HfResult};
use steinerq::term::{canonicalize, enumerate_reduced, equiv, is_reduced, parse, reduce};
use steinerq::{Element, Error, FreeModel, Limits, PartialSts, Term};

use report::{yes_no, Format, Report};

const AFTER_HELP: &str = "\
Term grammar:
  term     := factor { '*' factor }      (left-associative)
  factor   := variable | '(' term ')'
  variable := 'x' digits                 (index >= 1)
  Whitespace between tokens is ignored.

Lists of terms (--images, --prefix) are comma-separated.
Triple-system files hold `points: p1 p2 ...` and `block: a b c` lines; `#` starts a comment.";

#[derive(Parser, Debug)]
#[command(name = "steinerq", version, about = "Free Steiner quasigroup term calculus", after_help = AFTER_HELP)]
struct Cli {
    /// Rank bound for enumerations and bounded searches
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    rank_bound: u64,
    /// Length window for subalgebra closures (default: 4x the longest generator)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    length_cap: Option<u64>,
    /// Seed for randomised commands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Gens {
    /// Number of generators of the free model (default: highest variable used)
    #[arg(long)]
    gens: Option<u32>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SystemSource {
    /// Triple-system file
    #[arg(long)]
    file: Option<PathBuf>,
    /// Built-in Steiner triple system (7 or 9)
    #[arg(long)]
    order: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a term and print it fully parenthesised
    Parse { term: String },
    /// Canonical representative of the commutativity class
    Canon { term: String },
    /// Whether two terms are equal up to commuting subterms
    Equiv { left: String, right: String },
    /// Rank and length of a term
    Rank { term: String },
    /// Whether a term is reduced
    Reduced { term: String },
    /// Reduced canonical form
    Reduce { term: String },
    /// Reduced classes over x1..xN up to the rank bound
    Enumerate {
        #[arg(long)]
        vars: u32,
        /// Only print counts
        #[arg(long)]
        counts_only: bool,
    },
    /// Product of two elements of the free model
    Mul {
        #[command(flatten)]
        gens: Gens,
        left: String,
        right: String,
    },
    /// Level sizes by enumeration and by closure
    Levels {
        /// Number of generators
        gens: u32,
        /// Highest level
        k: usize,
    },
    /// Level of an element over the base
    LevelOf {
        #[command(flatten)]
        gens: Gens,
        element: String,
    },
    /// Bounded closure of a set of elements
    Closure {
        #[command(flatten)]
        gens: Gens,
        /// Report whether this element is in the closure
        #[arg(long)]
        member: Option<String>,
        /// Print every element
        #[arg(long)]
        list: bool,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Search for a dependence between elements
    Independent {
        #[command(flatten)]
        gens: Gens,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Image of an element under the homomorphism given by generator images
    Hom {
        #[command(flatten)]
        gens: Gens,
        /// Comma-separated images: point names of a finite model, or terms
        /// when no finite model is given
        #[arg(long)]
        images: String,
        /// Finite target from a file
        #[arg(long, conflicts_with = "order")]
        file: Option<PathBuf>,
        /// Built-in finite target (7 or 9)
        #[arg(long)]
        order: Option<u32>,
        element: String,
    },
    /// Validate a partial triple system
    Validate {
        #[command(flatten)]
        source: SystemSource,
    },
    /// Predimension: points minus blocks
    Delta {
        #[command(flatten)]
        source: SystemSource,
    },
    /// HF-ordering, or a confined subset
    HfOrder {
        #[command(flatten)]
        source: SystemSource,
    },
    /// Points not generated by earlier points of an HF-ordering
    HfBase {
        #[command(flatten)]
        source: SystemSource,
        /// Comma-separated ordering to use instead of the greedy one
        #[arg(long)]
        ordering: Option<String>,
    },
    /// The partial triple system on the level S_k of a free model
    ExportLevels {
        #[arg(long)]
        gens: u32,
        #[arg(long)]
        k: usize,
        /// Write to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Occurrences of a variable and the single-path test
    Occ {
        term: String,
        /// Variable index (default: highest in the term)
        #[arg(long)]
        var: Option<u32>,
    },
    /// Inverse r(x, z) of a term with one occurrence of y
    Invert {
        term: String,
        /// Index of y (default: highest in the term)
        #[arg(long)]
        y: Option<u32>,
        /// Index of z (default: y + 1)
        #[arg(long)]
        z: Option<u32>,
    },
    /// Classify b -> t(a, b) as automorphism, embedding or non-injective
    Classify {
        #[command(flatten)]
        gens: Gens,
        /// Comma-separated prefix a (default: x1..x(k-1))
        #[arg(long)]
        prefix: Option<String>,
        /// The element b (default: the generator after the prefix)
        #[arg(long)]
        b: Option<String>,
        /// Also check the certificate on all elements up to the rank bound
        #[arg(long)]
        verify: bool,
        term: String,
    },
    /// Apply an endomorphism given by generator images
    Apply {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        images: String,
        element: String,
    },
    /// Injectivity of r -> t(x, r) up to the rank bound, or substitution checks
    InjectCheck {
        term: String,
        /// Index of y (default: highest in the term)
        #[arg(long)]
        y: Option<u32>,
        /// Instead check the substitution of this term for z
        #[arg(long)]
        substitute: Option<String>,
        /// Index of z for --substitute (default: highest in the term)
        #[arg(long)]
        z: Option<u32>,
    },
    /// The elementary automorphism x_pivot -> x_pivot * shift
    Elementary {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        pivot: u32,
        shift: String,
    },
    /// Irreducibility of a tuple of image terms
    Irreducible { images: String },
    /// Whether substituting the images keeps reduced terms reduced
    Preserves { images: String },
    /// Decompose an automorphism into elementary automorphisms
    Tame {
        #[command(flatten)]
        gens: Gens,
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        images: Option<String>,
        /// Decompose a product of this many random elementary automorphisms
        #[arg(long)]
        random: Option<usize>,
    },
    /// Check a decomposition against generator images
    VerifyTame {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        images: String,
        /// Factors `pivot:shift` separated by `;`, leftmost first
        #[arg(long, allow_hyphen_values = true)]
        factors: String,
    },
}

enum Failure {
    Domain(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = Result<Report, Failure>;

fn terms(list: &str) -> Result<Vec<Term>, Failure> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse(s).map_err(Failure::from))
        .collect()
}

fn highest(ts: &[&Term]) -> u32 {
    ts.iter().map(|t| t.max_var()).max().unwrap_or(1)
}

fn model(gens: &Gens, ts: &[&Term]) -> Result<FreeModel, Failure> {
    let n = gens.gens.unwrap_or_else(|| highest(ts));
    let m = FreeModel::new(n)?;
    for t in ts {
        m.check_term(t)?;
    }
    Ok(m)
}

fn load_system(src: &SystemSource) -> Result<PartialSts, Failure> {
    match (&src.file, src.order) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(PartialSts::parse(&text)?)
        }
        (None, Some(order)) => Ok(builtin_sts(order)?.0),
        (None, None) => Err(Failure::Usage("give --file or --order".into())),
    }
}

fn names(sts: &PartialSts, ps: &[usize]) -> String {
    ps.iter().map(|&p| sts.name(p)).collect::<Vec<_>>().join(" ")
}

fn closure_opts(cli: &Cli) -> ClosureOptions {
    ClosureOptions {
        length_cap: cli.length_cap.map(|c| c as usize),
        max_elements: None,
    }
}

fn spec_from(gens: &Gens, images: &str) -> Result<(FreeModel, EndoSpec), Failure> {
    let ts = terms(images)?;
    let n = gens.gens.unwrap_or(ts.len() as u32);
    let m = FreeModel::new(n)?;
    let spec = EndoSpec::from_terms(n, &ts)?;
    Ok((m, spec))
}

fn factors_report(r: &mut Report, dec: &TameDecomposition) {
    r.put("factors", dec.factors.len());
    for f in &dec.factors {
        r.put("factor", f);
    }
    r.list("length-trace", &dec.length_trace);
}

fn parse_factor(m: &FreeModel, text: &str) -> Result<ElementaryAuto, Failure> {
    let (pivot, shift) = text
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("factor {text:?} is not `pivot:shift`")))?;
    let pivot = pivot
        .trim()
        .trim_start_matches('x')
        .parse::<u32>()
        .map_err(|_| Failure::Usage(format!("bad pivot in {text:?}")))?;
    Ok(elementary(m, pivot, &parse(shift)?)?)
}

fn run(cli: &Cli) -> Out {
    let limits = Limits::default();
    let rank_bound = cli.rank_bound as usize;
    let mut r = Report::new();
    match &cli.command {
        Command::Parse { term } => {
            let t = parse(term)?;
            r.put("term", &t).put("length", t.len()).put("rank", t.rank());
        }
        Command::Canon { term } => {
            r.put("canonical", canonicalize(&parse(term)?));
        }
        Command::Equiv { left, right } => {
            r.put("equivalent", yes_no(equiv(&parse(left)?, &parse(right)?)));
        }
        Command::Rank { term } => {
            let t = parse(term)?;
            r.put("rank", t.rank()).put("length", t.len());
        }
        Command::Reduced { term } => {
            r.put("is-reduced", yes_no(is_reduced(&parse(term)?)));
        }
        Command::Reduce { term } => {
            r.put("reduced", reduce(&parse(term)?));
        }
        Command::Enumerate { vars, counts_only } => {
            let e = enumerate_reduced(*vars, rank_bound, &limits)?;
            if !counts_only {
                for t in e.iter() {
                    r.put("term", t);
                }
            }
            r.list("rank-counts", e.counts()).put("count", e.count());
        }
        Command::Mul { gens, left, right } => {
            let (a, b) = (parse(left)?, parse(right)?);
            let m = model(gens, &[&a, &b])?;
            r.put("product", m.mul(&reduce(&a), &reduce(&b))?);
        }
        Command::Levels { gens, k } => {
            let m = FreeModel::new(*gens)?;
            let by_terms = m.levels(*k)?;
            let by_closure = m.levels_by_closure(*k)?;
            let per_rank: Vec<usize> = (0..=*k).map(|i| by_terms.new_at(i).len()).collect();
            r.list("rank-counts", per_rank)
                .list("level-sizes", by_terms.sizes())
                .list("closure-sizes", by_closure.levels.sizes())
                .put("agree", yes_no(by_terms == by_closure.levels));
        }
        Command::LevelOf { gens, element } => {
            let t = parse(element)?;
            let m = model(gens, &[&t])?;
            r.put("level", m.level_of(&m.element(&t)?));
        }
        Command::Closure {
            gens,
            member,
            list,
            elements,
        } => {
            let ts: Vec<Term> = elements.iter().map(|s| parse(s)).collect::<Result<_, _>>()?;
            let extra = member.as_deref().map(parse).transpose()?;
            let all: Vec<&Term> = ts.iter().chain(extra.as_ref()).collect();
            let m = model(gens, &all)?;
            let es: Vec<Element> = ts.iter().map(reduce).collect();
            let c = m.subalgebra_closure(&es, closure_opts(cli))?;
            r.put("size", c.len())
                .put("saturated", yes_no(c.saturated()))
                .put("length-cap", c.length_cap());
            if let Some(x) = extra {
                let x = reduce(&x);
                r.put("contains", yes_no(c.contains(&x)));
                if let Some(d) = c.derivation(&x) {
                    r.put("derivation", d);
                }
            }
            if *list {
                for e in c.elements() {
                    r.put("element", e);
                }
            }
        }
        Command::Independent { gens, elements } => {
            let ts: Vec<Term> = elements.iter().map(|s| parse(s)).collect::<Result<_, _>>()?;
            let m = model(gens, &ts.iter().collect::<Vec<_>>())?;
            let es: Vec<Element> = ts.iter().map(reduce).collect();
            match m.independence_refute(&es, rank_bound)? {
                Refutation::Dependent { left, right } => {
                    r.put("result", "dependent").put("left", left).put("right", right);
                }
                Refutation::NoWitnessUpTo(b) => {
                    r.put("result", "no-witness").put("bound", b);
                }
            }
            match certify_independent(&m, &es)? {
                Some(IndependenceCertificate::BaseSubset) => {
                    r.put("certificate", "base-subset");
                }
                Some(IndependenceCertificate::AutomorphicImage { pivot, image }) => {
                    r.put("certificate", format!("automorphic-image x{pivot} -> {image}"));
                }
                None => {
                    r.put("certificate", "none");
                }
            }
        }
        Command::Hom {
            gens,
            images,
            file,
            order,
            element,
        } => {
            let t = parse(element)?;
            let finite: Option<FiniteModel> = match (file, order) {
                (Some(path), _) => {
                    let sts = load_system(&SystemSource {
                        file: Some(path.clone()),
                        order: None,
                    })?;
                    Some(FiniteModel::from_sts(&sts)?)
                }
                (None, Some(o)) => Some(builtin_sts(*o)?.1),
                (None, None) => None,
            };
            let parts: Vec<&str> = images.split(',').map(str::trim).collect();
            let n = gens.gens.unwrap_or(parts.len() as u32);
            let m = FreeModel::new(n)?;
            m.check_term(&t)?;
            let e = reduce(&t);
            match finite {
                Some(fm) => {
                    let pts = parts
                        .iter()
                        .map(|p| {
                            fm.point(p)
                                .ok_or_else(|| Failure::Usage(format!("no point named {p:?}")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    let h = m.extend_hom(pts, &fm)?;
                    r.put("image", fm.name(h.apply(&e)?));
                }
                None => {
                    let ts = terms(images)?;
                    let target = FreeModel::new(highest(&ts.iter().collect::<Vec<_>>()))?;
                    let h = m.extend_hom(ts.iter().map(reduce).collect(), &target)?;
                    r.put("image", h.apply(&e)?);
                }
            }
        }
        Command::Validate { source } => {
            let sts = load_system(source)?;
            r.put("valid", "yes")
                .put("points", sts.num_points())
                .put("blocks", sts.blocks().len());
            if let Some(order) = source.order {
                let fm = builtin_sts(order)?.1;
                r.put("quasigroup", fm.size());
            }
        }
        Command::Delta { source } => {
            r.put("delta", load_system(source)?.delta());
        }
        Command::HfOrder { source } => {
            let sts = load_system(source)?;
            match hf_order(&sts) {
                HfResult::Ordering(ord) => {
                    r.put("result", "ordering")
                        .put("order", names(&sts, ord.order()))
                        .list("prefix-deltas", prefix_deltas(&sts, &ord));
                }
                HfResult::Confined(w) => {
                    r.put("result", "confined").put("witness", names(&sts, &w));
                }
            }
        }
        Command::HfBase { source, ordering } => {
            let sts = load_system(source)?;
            let ord = match ordering {
                Some(list) => {
                    let ns: Vec<&str> = list.split(',').map(str::trim).collect();
                    HfOrdering::from_names(&sts, &ns)?
                }
                None => match hf_order(&sts) {
                    HfResult::Ordering(o) => o,
                    HfResult::Confined(w) => {
                        return Err(Failure::Domain(Error::InvalidOrdering(format!(
                            "no HF-ordering exists; confined subset {}",
                            names(&sts, &w)
                        ))))
                    }
                },
            };
            r.put("order", names(&sts, ord.order()))
                .put("base", names(&sts, &hf_base(&sts, &ord)));
        }
        Command::ExportLevels { gens, k, out } => {
            let m = FreeModel::new(*gens)?;
            let sts = from_free_levels(&m, *k)?;
            let text = sts.to_text();
            match out {
                Some(path) => {
                    std::fs::write(path, &text)
                        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                    r.put("written", path.display())
                        .put("points", sts.num_points())
                        .put("blocks", sts.blocks().len());
                }
                None => {
                    r.put("points", sts.points().join(" "));
                    for b in sts.blocks() {
                        r.put("block", names(&sts, b));
                    }
                }
            }
        }
        Command::Occ { term, var } => {
            let t = parse(term)?;
            let v = var.unwrap_or_else(|| t.max_var());
            let rep = occurrences(&t, v);
            r.put("variable", format!("x{v}"))
                .put("count", rep.count)
                .put("single-path", yes_no(rep.single_path_exists));
        }
        Command::Invert { term, y, z } => {
            let t = parse(term)?;
            let y = y.unwrap_or_else(|| t.max_var());
            let z = z.unwrap_or(y + 1);
            r.put("inverse", invert_single(&t, y, z)?)
                .put("y", format!("x{y}"))
                .put("z", format!("x{z}"));
        }
        Command::Classify {
            gens,
            prefix,
            b,
            verify,
            term,
        } => {
            let t = parse(term)?;
            let k = t.max_var().max(1);
            let prefix: Vec<Term> = match prefix {
                Some(p) => terms(p)?,
                None => (1..k.max(2)).map(Term::var).collect(),
            };
            let b = match b {
                Some(s) => parse(s)?,
                None => Term::var(prefix.len() as u32 + 1),
            };
            let mut all: Vec<&Term> = prefix.iter().collect();
            all.push(&b);
            let m = model(gens, &all)?;
            let pre: Vec<Element> = prefix.iter().map(reduce).collect();
            let c = classify_endo(&m, &pre, &reduce(&b), &t, cli.length_cap.map(|c| c as usize))?;
            r.put("class", c.class.name())
                .put("reduced-image", &c.reduced_image)
                .put("occurrences", c.occurrences)
                .put("image-value", &c.image_value);
            match &c.class {
                EndoClass::NotInjective { collapsed, partner } => {
                    r.put("collapsed", collapsed).put("partner", partner);
                }
                EndoClass::Automorphism { inverse } => {
                    r.put("inverse", inverse);
                }
                EndoClass::EmbeddingNotSurjective {
                    excluded,
                    length_cap,
                    closure_size,
                    saturated,
                } => {
                    r.put("excluded", excluded)
                        .put("length-cap", length_cap)
                        .put("closure-size", closure_size)
                        .put("saturated", yes_no(*saturated));
                }
            }
            if *verify {
                r.put("verified", yes_no(c.verify(rank_bound)?))
                    .put("verify-rank", rank_bound);
            }
        }
        Command::Apply {
            gens,
            images,
            element,
        } => {
            let (m, spec) = spec_from(gens, images)?;
            let t = parse(element)?;
            r.put("image", spec.apply(&m.element(&t)?)?);
        }
        Command::InjectCheck {
            term,
            y,
            substitute,
            z,
        } => {
            let t = parse(term)?;
            match substitute {
                Some(s) => {
                    let rt = parse(s)?;
                    let z = z.unwrap_or_else(|| t.max_var());
                    let y = y.unwrap_or_else(|| rt.max_var());
                    let rep = substitution_check(&t, z, &rt, y)?;
                    r.put("substituted", &rep.substituted)
                        .put("substituted-reduced", yes_no(rep.substituted_reduced))
                        .put("premise", yes_no(rep.premise))
                        .put("reducedness-ok", yes_no(rep.reducedness_ok))
                        .put("injectivity-ok", yes_no(rep.injectivity_ok));
                    if let Some((a, b)) = rep.collision {
                        r.put("collision", format!("{a} {b}"));
                    }
                }
                None => {
                    let y = y.unwrap_or_else(|| t.max_var());
                    match injectivity_condition(&t, y, rank_bound, &limits)? {
                        Injectivity::HoldsUpTo(b) => {
                            r.put("result", "holds").put("bound", b);
                        }
                        Injectivity::CounterexamplePair(a, b) => {
                            r.put("result", "counterexample").put("r1", a).put("r2", b);
                        }
                    }
                }
            }
        }
        Command::Elementary { gens, pivot, shift } => {
            let s = parse(shift)?;
            let n = gens.gens.unwrap_or_else(|| highest(&[&s]).max(*pivot));
            let m = FreeModel::new(n)?;
            let f = elementary(&m, *pivot, &s)?;
            r.put("elementary", &f);
            for (i, e) in f.spec().images().iter().enumerate() {
                r.put(&format!("x{}", i + 1), e);
            }
        }
        Command::Irreducible { images } => {
            let es: Vec<Element> = terms(images)?.iter().map(reduce).collect();
            match is_irreducible(&es) {
                Irreducibility::Irreducible => {
                    r.put("result", "irreducible");
                }
                Irreducibility::Witness { index, r: rt, s } => {
                    r.put("result", "witness")
                        .put("index", index)
                        .put("r", rt)
                        .put("s", s);
                }
            }
        }
        Command::Preserves { images } => {
            let es: Vec<Element> = terms(images)?.iter().map(reduce).collect();
            let p = preserves_reduced(&es, rank_bound, &limits)?;
            r.put("preserves", yes_no(p.holds()))
                .put("checked", p.checked)
                .put("bound", rank_bound);
            if let Some(v) = p.violation {
                r.put("violation", v);
            }
        }
        Command::Tame {
            gens,
            images,
            random,
        } => {
            let (m, spec) = match (images, random) {
                (Some(imgs), _) => spec_from(gens, imgs)?,
                (None, Some(count)) => {
                    let n = gens.gens.unwrap_or(3);
                    let m = FreeModel::new(n)?;
                    let choices = all_elementary(&m, 2)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                    let mut spec = EndoSpec::identity(n);
                    for _ in 0..*count {
                        let f = choices.choose(&mut rng).expect("at least one choice");
                        r.put("built-from", f);
                        spec = spec.compose(&f.spec())?;
                    }
                    (m, spec)
                }
                (None, None) => return Err(Failure::Usage("give --images or --random".into())),
            };
            r.put("spec", &spec);
            let dec = tame_decompose(&m, &spec)?;
            factors_report(&mut r, &dec);
            r.put("verified", yes_no(verify_tame(&m, &dec, &spec)));
        }
        Command::VerifyTame {
            gens,
            images,
            factors,
        } => {
            let (m, spec) = spec_from(gens, images)?;
            let fs = factors
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|f| parse_factor(&m, f))
                .collect::<Result<Vec<_>, _>>()?;
            let dec = TameDecomposition {
                factors: fs,
                length_trace: Vec::new(),
            };
            r.put("verified", yes_no(verify_tame(&m, &dec, &spec)));
        }
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return ExitCode::SUCCESS;
            }
            eprintln!("\n{}", Cli::command().render_help());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}\n\n{}", Cli::command().render_help());
            ExitCode::from(2)
        }
    }
}
