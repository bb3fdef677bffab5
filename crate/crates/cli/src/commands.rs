use ceresa_core::arith::primes_up_to;
use ceresa_core::beauville::{scan_class, scan_tasks};
use ceresa_core::cm::{classify, is_isogenous_to_hyperelliptic, obstructing_subcover};
use ceresa_core::fermat::{enumerate_classes, genus, is_hyperelliptic};
use ceresa_core::finite_field::residue_fields;
use ceresa_core::jacobi::{character_product, local_factor_from_values, weil_check, MAX_NORM};
use ceresa_core::{
    CharacterPair, ClassifyRecord, JacobiError, JacobiTable, QuotientLabel, ScanOptions, ScanRecord,
};
use rayon::prelude::*;

use crate::args::{JacobiArgs, LocalFactorArgs, RangeArgs, ScanArgs};
use crate::error::CliError;
use crate::report::{
    cyclo_numbers, number, JacobiRow, LocalFactorRow, MinimalRow, PrimeStatus, SpecValue,
};

/// Largest level accepted by the sweeps.
pub const M_CAP: u32 = 256;
/// Largest prime accepted by the Jacobi commands.
pub const P_CAP: u64 = 10_000;

fn check_levels(args: &RangeArgs) -> Result<(), CliError> {
    if args.m_min < 3 || args.m_min > args.m_max || args.m_max > M_CAP {
        return Err(CliError::InvalidRange(format!(
            "need 3 <= m_min <= m_max <= {M_CAP}, got {}..{}",
            args.m_min, args.m_max
        )));
    }
    Ok(())
}

fn check_primes(p_min: u64, p_max: u64) -> Result<(), CliError> {
    if p_min > p_max || p_max > P_CAP {
        return Err(CliError::InvalidRange(format!(
            "need p_min <= p_max <= {P_CAP}, got {p_min}..{p_max}"
        )));
    }
    Ok(())
}

fn check_level(m: u32) -> Result<(), CliError> {
    if !(3..=M_CAP).contains(&m) {
        return Err(CliError::InvalidRange(format!("level {m} outside 3..={M_CAP}")));
    }
    Ok(())
}

pub fn scan(args: &ScanArgs) -> Result<Vec<ScanRecord>, CliError> {
    check_levels(&args.range)?;
    let opts = ScanOptions { use_collapse: args.use_collapse_opt };
    let tasks = scan_tasks(args.range.m_min, args.range.m_max);
    tasks.par_iter().map(|q| scan_class(q, opts).map_err(CliError::from)).collect()
}

fn classes(args: &RangeArgs) -> Vec<QuotientLabel> {
    (args.m_min..=args.m_max).flat_map(enumerate_classes).collect()
}

pub fn classify_range(args: &RangeArgs) -> Result<Vec<ClassifyRecord>, CliError> {
    check_levels(args)?;
    Ok(classes(args).par_iter().map(classify).collect())
}

pub fn minimal(args: &RangeArgs) -> Result<Vec<MinimalRow>, CliError> {
    check_levels(args)?;
    let candidates: Vec<QuotientLabel> = classes(args)
        .into_par_iter()
        .filter(|q| !is_hyperelliptic(q) && is_isogenous_to_hyperelliptic(q))
        .collect();
    Ok(candidates
        .par_iter()
        .map(|q| {
            let obstruction = obstructing_subcover(q);
            MinimalRow {
                m: q.m(),
                a: q.a(),
                b: q.b(),
                genus: genus(q),
                minimal: obstruction.is_none(),
                obstruction_divisor: obstruction.map(|(d, _)| d),
                obstruction: obstruction.map(|(_, s)| [s.m(), s.a(), s.b()]),
            }
        })
        .collect())
}

/// The residue fields above `p`, or the status explaining why there are
/// no values to report.
fn fields_at(m: u32, p: u64) -> Result<Result<Vec<JacobiTable>, PrimeStatus>, CliError> {
    let specs = match residue_fields(m, p) {
        Ok(s) => s,
        Err(JacobiError::RamifiedPrime { .. }) => return Ok(Err(PrimeStatus::Ramified)),
        Err(e) => return Err(e.into()),
    };
    if specs.iter().any(|s| s.norm_u64().is_none_or(|n| n > MAX_NORM)) {
        return Ok(Err(PrimeStatus::NormCap));
    }
    Ok(Ok(specs.iter().map(JacobiTable::new).collect::<Result<_, _>>()?))
}

pub fn jacobi(args: &JacobiArgs) -> Result<Vec<JacobiRow>, CliError> {
    let q = QuotientLabel::new(args.m as i64, args.a as i64, args.b as i64)?;
    check_level(q.m())?;
    check_primes(args.p_min, args.p_max)?;
    let pair = q.pair();
    let primes: Vec<u64> =
        primes_up_to(args.p_max).into_iter().filter(|&p| p >= args.p_min).collect();
    primes
        .par_iter()
        .map(|&p| {
            let mut row = JacobiRow {
                m: q.m(),
                a: q.a(),
                b: q.b(),
                p,
                status: PrimeStatus::Ok,
                f: None,
                specs: Vec::new(),
                local_factor: None,
            };
            let tables = match fields_at(q.m(), p)? {
                Ok(t) => t,
                Err(status) => {
                    row.status = status;
                    if status == PrimeStatus::NormCap {
                        row.f = residue_fields(q.m(), p)?.first().map(|s| s.f);
                    }
                    return Ok(row);
                }
            };
            let f = tables[0].spec().f;
            let mut values = Vec::with_capacity(tables.len());
            for t in &tables {
                let v = t.tau(&pair)?;
                let n = t.spec().norm_u64().expect("capped norm");
                row.specs.push(SpecValue {
                    index: t.spec().index,
                    g: t.spec().g.clone(),
                    tau: cyclo_numbers(&v),
                    weil: weil_check(&v, n),
                });
                values.push(v);
            }
            let lf = local_factor_from_values(q.m(), p, f as usize, &values)?;
            row.f = Some(f);
            row.local_factor = Some(lf.coeffs.iter().map(number).collect());
            Ok(row)
        })
        .collect()
}

/// Parses `a,b;a,b;...` into character pairs at level `m`.
pub fn parse_chars(m: u32, text: &str) -> Result<Vec<CharacterPair>, CliError> {
    let bad = || CliError::InvalidCharacters(text.to_string());
    let pairs = text
        .split(';')
        .map(|item| {
            let (a, b) = item.trim().split_once(',').ok_or_else(bad)?;
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            Ok(CharacterPair::new(m as i64, a, b)?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    if pairs.is_empty() {
        return Err(bad());
    }
    Ok(pairs)
}

pub fn local_factors(args: &LocalFactorArgs) -> Result<Vec<LocalFactorRow>, CliError> {
    check_level(args.m)?;
    check_primes(args.p_min, args.p_max)?;
    let chars = parse_chars(args.m, &args.chars)?;
    let labels: Vec<[u32; 2]> = chars.iter().map(|c| [c.a(), c.b()]).collect();
    let primes: Vec<u64> =
        primes_up_to(args.p_max).into_iter().filter(|&p| p >= args.p_min).collect();
    primes
        .par_iter()
        .map(|&p| {
            let mut row = LocalFactorRow {
                m: args.m,
                chars: labels.clone(),
                p,
                status: PrimeStatus::Ok,
                f: None,
                values: Vec::new(),
                coeffs: None,
            };
            let tables = match fields_at(args.m, p)? {
                Ok(t) => t,
                Err(status) => {
                    row.status = status;
                    if status == PrimeStatus::NormCap {
                        row.f = residue_fields(args.m, p)?.first().map(|s| s.f);
                    }
                    return Ok(row);
                }
            };
            let f = tables[0].spec().f;
            let values = tables
                .iter()
                .map(|t| character_product(t, &chars))
                .collect::<Result<Vec<_>, _>>()?;
            let lf = local_factor_from_values(args.m, p, f as usize, &values)?;
            row.f = Some(f);
            row.values = values.iter().map(cyclo_numbers).collect();
            row.coeffs = Some(lf.coeffs.iter().map(number).collect());
            Ok(row)
        })
        .collect()
}
