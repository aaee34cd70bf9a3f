use std::collections::BTreeMap;

use reciprocity_core::arith::{FieldDescriptor, FieldScalar};
use reciprocity_core::curve;
use reciprocity_core::function_field::{Place, Rf};
use reciprocity_core::parse::{parse_field, parse_place, parse_rational_function, parse_surface_function};
use reciprocity_core::report::{RelationReport, TermReport, ValueReport, Verification, VerificationReport};
use reciprocity_core::segal_wilson::{cocycle_c, sw_verify};
use reciprocity_core::surface::{
    horozov3, hk4, nu, nu_verify, parshin3, reciprocity_verify_2d, SurfaceFunction, SurfaceLaw, CURVE_VAR, NORMAL_VAR,
};
use reciprocity_core::tate::{
    general_reciprocity_run, index_additivity_sides, lattice_index, xsymbol_axiom_check, MonomialLattice,
    MonomialOperator, ResidueSlot, XSymbol, XSymbolFamily,
};
use reciprocity_core::{Error, Result};
use serde::Serialize;

use crate::{Check, Command, Common, CurvePair, SurfaceArgs};

/// Rendered report and whether it certifies its identity.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

fn render<R: Serialize + std::fmt::Display>(report: &R, json: bool, ok: bool) -> Output {
    let text = if json {
        serde_json::to_string_pretty(report).expect("reports serialize")
    } else {
        report.to_string()
    };
    Output { text, ok }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse { pos: 0, msg: msg.into() }
}

/// Parsed common flags plus the canonical inputs collected so far.
struct Ctx {
    field: FieldDescriptor,
    json: bool,
    seed: u64,
    inputs: BTreeMap<String, String>,
}

impl Ctx {
    fn new(common: &Common) -> Result<Self> {
        Ok(Ctx {
            field: parse_field(&common.field)?,
            json: common.json,
            seed: common.seed,
            inputs: BTreeMap::new(),
        })
    }

    fn curve(&mut self, name: &str, text: &str) -> Result<Rf> {
        let f = parse_rational_function(text, self.field, NORMAL_VAR)?;
        self.inputs.insert(name.to_string(), f.to_string());
        Ok(f)
    }

    fn surface(&mut self, name: &str, text: &str) -> Result<SurfaceFunction> {
        let f = parse_surface_function(text, self.field)?;
        self.inputs.insert(name.to_string(), f.to_string());
        Ok(f)
    }

    fn place(&self, text: &str, var: char) -> Result<Place> {
        parse_place(text, self.field, var)
    }

    fn note(&mut self, name: &str, value: impl ToString) {
        self.inputs.insert(name.to_string(), value.to_string());
    }

    fn verification(self, v: Verification) -> Output {
        let ok = v.ok;
        let report: VerificationReport = v.to_report(self.inputs, self.seed);
        render(&report, self.json, ok)
    }

    fn value(self, kind: &str, place: Option<&Place>, value: impl ToString, oracle: Option<String>) -> Output {
        let report = ValueReport {
            kind: kind.to_string(),
            field: self.field.to_string(),
            inputs: self.inputs,
            place: place.map(|x| x.to_string()),
            value: value.to_string(),
            oracle,
            seed: self.seed,
        };
        render(&report, self.json, true)
    }

    fn relation(self, kind: &str, terms: Vec<TermReport>, lhs: String, rhs: String, ok: bool) -> Output {
        let report = RelationReport {
            kind: kind.to_string(),
            field: self.field.to_string(),
            inputs: self.inputs,
            terms,
            lhs,
            rhs,
            ok,
            seed: self.seed,
        };
        render(&report, self.json, ok)
    }
}

fn curve_pair(ctx: &mut Ctx, pair: &CurvePair) -> Result<(Rf, Rf)> {
    Ok((ctx.curve("f", &pair.f)?, ctx.curve("g", &pair.g)?))
}

/// Local place on the curve t = 0, or `None` for a verification run.
fn surface_mode(surface: &SurfaceArgs) -> Result<Option<&str>> {
    match (&surface.place, surface.verify) {
        (Some(_), true) => Err(usage("--place and --verify are mutually exclusive")),
        (None, false) => Err(usage("give --place for a local value or --verify for the product")),
        (p, _) => Ok(p.as_deref()),
    }
}

pub fn run(command: Command) -> Result<Output> {
    match command {
        Command::Tame { common, pair, place, oracle } => {
            let mut ctx = Ctx::new(&common)?;
            let (f, g) = curve_pair(&mut ctx, &pair)?;
            let x = ctx.place(&place, NORMAL_VAR)?;
            let value = curve::tame_symbol(&f, &g, &x)?;
            let check = if oracle {
                let other = curve::tame_symbol_milnor(&f, &g, &x)?;
                if other != value {
                    return Err(Error::OracleMismatch {
                        place: x.to_string(),
                        classical: value.to_string(),
                        oracle: other.to_string(),
                    });
                }
                Some(other.to_string())
            } else {
                None
            };
            Ok(ctx.value("tame", Some(&x), value, check))
        }
        Command::Weil { common, pair } => {
            let mut ctx = Ctx::new(&common)?;
            let (f, g) = curve_pair(&mut ctx, &pair)?;
            let v = curve::weil_verify(&f, &g, ctx.seed)?;
            Ok(ctx.verification(v))
        }
        Command::Sumval { common, f } => {
            let mut ctx = Ctx::new(&common)?;
            let f = ctx.curve("f", &f)?;
            let v = curve::sum_of_valuations_verify(&f, ctx.seed)?;
            Ok(ctx.verification(v))
        }
        Command::Residue { common, pair, place, oracle } => {
            let mut ctx = Ctx::new(&common)?;
            let (f, g) = curve_pair(&mut ctx, &pair)?;
            let x = ctx.place(&place, NORMAL_VAR)?;
            if oracle {
                let (value, check) = curve::residue_with_oracle(&f, &g, &x)?;
                Ok(ctx.value("residue", Some(&x), value, Some(check.to_string())))
            } else {
                let value = reciprocity_core::tate::classical_residue(&f, &g, &x)?;
                Ok(ctx.value("residue", Some(&x), value, None))
            }
        }
        Command::Restheorem { common, pair, oracle } => {
            let mut ctx = Ctx::new(&common)?;
            let (f, g) = curve_pair(&mut ctx, &pair)?;
            let v = curve::residue_theorem_verify(&f, &g, oracle, ctx.seed)?;
            Ok(ctx.verification(v))
        }
        Command::Hilbert { common, pair, m, place, verify } => {
            let mut ctx = Ctx::new(&common)?;
            let (f, g) = curve_pair(&mut ctx, &pair)?;
            ctx.note("m", m);
            match (place, verify) {
                (Some(_), true) => Err(usage("--place and --verify are mutually exclusive")),
                (Some(p), false) => {
                    let x = ctx.place(&p, NORMAL_VAR)?;
                    let value = curve::hilbert_symbol(&f, &g, &x, m)?;
                    Ok(ctx.value("hilbert", Some(&x), value, None))
                }
                (None, _) => {
                    let v = curve::hilbert_verify(&f, &g, m, ctx.seed)?;
                    Ok(ctx.verification(v))
                }
            }
        }
        Command::Nu { common, surface } => {
            let mut ctx = Ctx::new(&common)?;
            let fs = surface_functions(&mut ctx, &surface, &[])?;
            let z = ctx.surface("z", &surface.z)?;
            match surface_mode(&surface)? {
                Some(p) => {
                    let x = ctx.place(p, CURVE_VAR)?;
                    let value = nu(&fs[0], &fs[1], &x, &z)?;
                    Ok(ctx.value("nu", Some(&x), value, None))
                }
                None => {
                    let v = nu_verify(&fs[0], &fs[1], &z, ctx.seed)?;
                    Ok(ctx.verification(v))
                }
            }
        }
        Command::Horozov { common, surface, h } => surface_law(common, surface, &[("h", h)], SurfaceLaw::Horozov),
        Command::Parshin { common, surface, h } => surface_law(common, surface, &[("h", h)], SurfaceLaw::Parshin),
        Command::Hk4 { common, surface, h, k } => {
            surface_law(common, surface, &[("h", h), ("k", k)], SurfaceLaw::HorozovKerr)
        }
        Command::Sw { common, pair, order, place } => {
            let mut ctx = Ctx::new(&common)?;
            let (f, g) = curve_pair(&mut ctx, &pair)?;
            ctx.note("order", order);
            match place {
                Some(p) => {
                    let x = ctx.place(&p, NORMAL_VAR)?;
                    let value = cocycle_c(&f, &g, &x, order)?;
                    Ok(ctx.value("sw", Some(&x), value, None))
                }
                None => {
                    let v = sw_verify(&f, &g, order, ctx.seed)?;
                    Ok(ctx.verification(v))
                }
            }
        }
        Command::Xsymbol { common, symbol, family, base, check, f, g, place, order } => {
            let mut ctx = Ctx::new(&common)?;
            let members = family.iter().map(|s| s.parse()).collect::<Result<Vec<MonomialLattice>>>()?;
            let n_slots = members[0].n_slots();
            let base = match base {
                Some(b) => b.parse()?,
                None => MonomialLattice::zero(n_slots),
            };
            if members.iter().chain([&base]).any(|l| l.n_slots() != n_slots) {
                return Err(Error::Domain("all lattices need the same number of slots".to_string()));
            }
            let sym = parse_symbol(&mut ctx, &symbol, n_slots, f, g, &place, order)?;
            ctx.note("symbol", &symbol);
            for (i, a) in members.iter().enumerate() {
                ctx.note(&format!("A_{i}"), a);
            }
            match check {
                Check::Tanri => tanri(ctx, &sym, &members),
                Check::Reciprocity => {
                    ctx.note("B_I", &base);
                    let fam = XSymbolFamily::from_base(sym, members, base)?;
                    let run = general_reciprocity_run(&fam)?;
                    let terms = run
                        .terms
                        .iter()
                        .enumerate()
                        .map(|(i, v)| TermReport { label: format!("f(A_{i})"), value: v.to_string() })
                        .collect();
                    Ok(ctx.relation("xsymbol", terms, run.lhs.to_string(), run.rhs.to_string(), run.equal))
                }
            }
        }
        Command::Index { common, lattice, shift, other } => {
            let mut ctx = Ctx::new(&common)?;
            let a: MonomialLattice = lattice.parse()?;
            let sigma = MonomialOperator::shift(shift, ctx.field);
            ctx.note("lattice", &a);
            ctx.note("shift", shift);
            match other {
                None => {
                    let value = lattice_index(&sigma, &a)?;
                    Ok(ctx.value("index", None, value, None))
                }
                Some(b) => {
                    let b: MonomialLattice = b.parse()?;
                    if b.n_slots() != a.n_slots() {
                        return Err(Error::Domain("both lattices need the same number of slots".to_string()));
                    }
                    ctx.note("other", &b);
                    let named = [("i(A)", a.clone()), ("i(B)", b.clone()), ("i(A+B)", a.sum(&b)), ("i(A∩B)", a.intersect(&b))];
                    let terms = named
                        .iter()
                        .map(|(label, l)| {
                            Ok(TermReport { label: label.to_string(), value: lattice_index(&sigma, l)?.to_string() })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let (lhs, rhs) = index_additivity_sides(&sigma, &a, &b)?;
                    Ok(ctx.relation("index", terms, lhs.to_string(), rhs.to_string(), lhs == rhs))
                }
            }
        }
    }
}

/// `f`, `g` and any extra named functions, in that order.
fn surface_functions(ctx: &mut Ctx, surface: &SurfaceArgs, extra: &[(&str, String)]) -> Result<Vec<SurfaceFunction>> {
    let mut fs = vec![ctx.surface("f", &surface.f)?, ctx.surface("g", &surface.g)?];
    for (name, text) in extra {
        fs.push(ctx.surface(name, text)?);
    }
    Ok(fs)
}

fn surface_law(common: Common, surface: SurfaceArgs, extra: &[(&str, String)], law: SurfaceLaw) -> Result<Output> {
    let mut ctx = Ctx::new(&common)?;
    let fs = surface_functions(&mut ctx, &surface, extra)?;
    let z = ctx.surface("z", &surface.z)?;
    match surface_mode(&surface)? {
        Some(p) => {
            let x = ctx.place(p, CURVE_VAR)?;
            let (kind, value) = match law {
                SurfaceLaw::Horozov => ("horozov", horozov3(&fs[0], &fs[1], &fs[2], &x, &z)?),
                SurfaceLaw::Parshin => ("parshin", parshin3(&fs[0], &fs[1], &fs[2], &x, &z)?),
                SurfaceLaw::HorozovKerr => {
                    let four: &[SurfaceFunction; 4] = fs.as_slice().try_into().expect("four functions");
                    ("hk4", hk4(four, &x, &z)?)
                }
            };
            Ok(ctx.value(kind, Some(&x), value, None))
        }
        None => {
            let v = reciprocity_verify_2d(law, &fs, &z, ctx.seed)?;
            Ok(ctx.verification(v))
        }
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| usage(format!("expected an integer, found {s:?}")))
}

fn parse_scalar(ctx: &Ctx, s: &str) -> Result<FieldScalar> {
    parse_rational_function(s, ctx.field, NORMAL_VAR)?
        .as_constant()
        .ok_or_else(|| usage(format!("expected a constant, found {s:?}")))
}

/// `<c>,<m>`: the operator `c u^m`.
fn parse_operator(ctx: &Ctx, s: &str) -> Result<MonomialOperator> {
    let (c, m) = s.rsplit_once(',').ok_or_else(|| usage(format!("expected <c>,<m>, found {s:?}")))?;
    MonomialOperator::new(parse_scalar(ctx, c)?, parse_int(m)?)
}

fn parse_symbol(
    ctx: &mut Ctx,
    text: &str,
    n_slots: usize,
    f: Option<String>,
    g: Option<String>,
    places: &[String],
    order: usize,
) -> Result<XSymbol> {
    if let Some(m) = text.strip_prefix("index:") {
        return Ok(XSymbol::index(&MonomialOperator::shift(parse_int(m)?, ctx.field), n_slots));
    }
    if let Some(ops) = text.strip_prefix("tame:") {
        let (a, b) = ops.split_once(':').ok_or_else(|| usage("tame:<c>,<m>:<d>,<n>"))?;
        return Ok(XSymbol::Tame { sigma: parse_operator(ctx, a)?, tau: parse_operator(ctx, b)? });
    }
    if text != "residue" && text != "cocycle" {
        return Err(usage(format!("unknown symbol {text:?}")));
    }
    let (Some(f), Some(g)) = (f, g) else {
        return Err(usage(format!("the {text} symbol needs --f and --g")));
    };
    let f = ctx.curve("f", &f)?;
    let g = ctx.curve("g", &g)?;
    let places = places.iter().map(|p| ctx.place(p, NORMAL_VAR)).collect::<Result<Vec<_>>>()?;
    let places = match places.len() {
        1 => vec![places[0].clone(); n_slots],
        n if n == n_slots => places,
        n => return Err(usage(format!("{n} places given for {n_slots} slots"))),
    };
    ctx.note("places", places.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" | "));
    let slots = places.into_iter().map(|place| ResidueSlot { f: f.clone(), g: g.clone(), place }).collect();
    Ok(if text == "residue" { XSymbol::Residue { slots } } else { XSymbol::Cocycle { slots, order } })
}

/// Axiom check on every pair of distinct members (the single member with
/// itself for a one-member family). Both sides multiply the per-pair sides.
fn tanri(ctx: Ctx, sym: &XSymbol, members: &[MonomialLattice]) -> Result<Output> {
    let n = members.len();
    let pairs: Vec<(usize, usize)> =
        if n == 1 { vec![(0, 0)] } else { (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect() };
    let mut terms = Vec::with_capacity(pairs.len());
    let mut lhs = sym.identity();
    let mut rhs = sym.identity();
    let mut ok = true;
    for (i, j) in pairs {
        let c = xsymbol_axiom_check(sym, &members[i], &members[j])?;
        let (l, r) = &c.additivity_sides;
        terms.push(TermReport {
            label: format!("A_{i}, A_{j}"),
            value: format!(
                "f(A)f(B) = {l}, f(A+B)f(A∩B) = {r}, trivial on 0 and V: {}, commensurability invariant: {}",
                c.trivial_on_zero_and_whole, c.commensurability_invariant
            ),
        });
        lhs = lhs.combine(l);
        rhs = rhs.combine(r);
        ok &= c.holds();
    }
    Ok(ctx.relation("xsymbol", terms, lhs.to_string(), rhs.to_string(), ok))
}
