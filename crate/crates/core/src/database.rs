//! The enumeration pipeline: scan every integer tuple in the height box,
//! keep those on the syzygy hypersurface with nonvanishing discriminant,
//! reduce to minimal tuples and then to normalized absolute minimal tuples.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::ops::Range;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational};
use crate::error::{Error, Result};
use crate::modular::Montgomery;
use crate::par;
use crate::relations::{RelationSet, WeightedPoly};
use crate::wps::{
    absolute_minimal, grlex_cmp, height, minimal_tuple, normalize_convention_flagged, HeightValue, WeightedPoint,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Prime used by the modular syzygy scan; survivors are re-checked exactly.
pub const SCAN_PRIME: u64 = 4_611_686_018_427_387_847;

/// The box `|x_i| <= floor(h^i)` minus the origin, enumerated as an
/// odometer with `x2` slowest and `x8` fastest, starting at `(-b2, ..., -b8)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleBox {
    bounds: [i64; 7],
}

impl TupleBox {
    pub fn new(bounds: [i64; 7]) -> Self {
        assert!(bounds.iter().all(|&b| b >= 0));
        Self { bounds }
    }

    /// Box for height bound `h >= 1`.
    pub fn for_height(h: &BigRational) -> Result<Self> {
        if *h < BigRational::one() {
            return Err(Error::EmptyDomain(format_rational(h)));
        }
        let mut bounds = [0i64; 7];
        for (k, b) in bounds.iter_mut().enumerate() {
            let p = num_traits::pow(h.clone(), k + 2).floor().to_integer();
            *b = p
                .to_i64()
                .filter(|&v| v < 1 << 20)
                .ok_or_else(|| Error::Input(format!("height {} is too large to enumerate", format_rational(h))))?;
        }
        Ok(Self { bounds })
    }

    pub fn bounds(&self) -> [i64; 7] {
        self.bounds
    }

    fn radix(&self, k: usize) -> u64 {
        2 * self.bounds[k] as u64 + 1
    }

    fn full_len(&self) -> u64 {
        (0..7).map(|k| self.radix(k)).product()
    }

    /// Number of tuples, `prod (2 b_i + 1) - 1`.
    pub fn len(&self) -> u64 {
        self.full_len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn origin_index(&self) -> u64 {
        self.full_len() / 2
    }

    fn full_index(&self, i: u64) -> u64 {
        if i < self.origin_index() {
            i
        } else {
            i + 1
        }
    }

    fn tuple_at_full(&self, mut idx: u64) -> [i64; 7] {
        let mut t = [0i64; 7];
        for k in (0..7).rev() {
            let r = self.radix(k);
            t[k] = (idx % r) as i64 - self.bounds[k];
            idx /= r;
        }
        t
    }

    /// Tuple number `i` in enumeration order.
    pub fn tuple_at(&self, i: u64) -> [i64; 7] {
        assert!(i < self.len());
        self.tuple_at_full(self.full_index(i))
    }

    /// `k` contiguous ranges of enumeration indices covering the box.
    pub fn partitions(&self, k: usize) -> Vec<Range<u64>> {
        let k = k.max(1) as u64;
        let n = self.len();
        (0..k).map(|j| n * j / k..n * (j + 1) / k).filter(|r| !r.is_empty()).collect()
    }

    /// Tuples with enumeration index in `range`, in order.
    pub fn iter_range(&self, range: Range<u64>) -> impl Iterator<Item = [i64; 7]> + '_ {
        range.map(move |i| self.tuple_at(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = [i64; 7]> + '_ {
        self.iter_range(0..self.len())
    }

    fn full_range(&self, range: &Range<u64>) -> Range<u64> {
        if range.is_empty() {
            return 0..0;
        }
        self.full_index(range.start)..self.full_index(range.end - 1) + 1
    }
}

/// Every tuple of height at most `h` in enumeration order.
pub fn enumerate_tuples(h: &BigRational) -> Result<impl Iterator<Item = [i64; 7]>> {
    let b = TupleBox::for_height(h)?;
    let n = b.len();
    Ok((0..n).map(move |i| b.tuple_at(i)))
}

/// Evaluates the syzygy modulo a prime over a tuple box.
///
/// The polynomial is specialized one variable at a time (`J2` first); each
/// level is recomputed only when its coordinate changes, and the last level
/// is a degree-5 polynomial in `J8` evaluated by Horner's rule.
#[derive(Clone, Debug)]
pub struct SyzygyScanner {
    ctx: Montgomery,
    top: Vec<u64>,
    /// `levels[k]` maps the terms of the level-`k` polynomial to
    /// `(exponent of variable k, index in the level-(k+1) polynomial)`.
    levels: Vec<Vec<(u32, u32)>>,
    sizes: Vec<usize>,
    max_exp: [u32; 7],
}

impl SyzygyScanner {
    pub fn new(syzygy: &WeightedPoly) -> Self {
        Self::with_prime(syzygy, SCAN_PRIME)
    }

    pub fn with_prime(syzygy: &WeightedPoly, p: u64) -> Self {
        assert_eq!(syzygy.weights().len(), 7);
        let ctx = Montgomery::new(p);
        let top = syzygy
            .coefficients_mod(&ctx)
            .expect("scan prime divides the syzygy denominator");
        let mut tails: Vec<Vec<u32>> = syzygy.terms().iter().map(|(m, _)| m.exponents.clone()).collect();
        let mut levels = Vec::new();
        let mut sizes = vec![tails.len()];
        let mut max_exp = [0u32; 7];
        for k in 0..7 {
            let last = k == 6;
            let mut index: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
            let mut plan = Vec::with_capacity(tails.len());
            for t in &tails {
                max_exp[k] = max_exp[k].max(t[0]);
                let rest = t[1..].to_vec();
                let next = index.len() as u32;
                let o = if last { 0 } else { *index.entry(rest).or_insert(next) };
                plan.push((t[0], o));
            }
            if last {
                // dense in the exponent of J8
                for p in &mut plan {
                    p.1 = p.0;
                }
                sizes.push(max_exp[6] as usize + 1);
            } else {
                let mut next: Vec<(u32, Vec<u32>)> = index.into_iter().map(|(t, i)| (i, t)).collect();
                next.sort();
                tails = next.into_iter().map(|(_, t)| t).collect();
                sizes.push(tails.len());
            }
            levels.push(plan);
        }
        Self {
            ctx,
            top,
            levels,
            sizes,
            max_exp,
        }
    }

    /// Number of terms after specializing `J2, ..., J_{k+1}`.
    pub fn level_sizes(&self) -> &[usize] {
        &self.sizes
    }

    fn powers(&self, b: &TupleBox) -> Vec<Vec<Vec<u64>>> {
        (0..7)
            .map(|k| {
                let bound = b.bounds[k];
                (-bound..=bound)
                    .map(|v| {
                        let x = self.ctx.from_i64(v);
                        let mut p = vec![self.ctx.one()];
                        for e in 1..=self.max_exp[k] as usize {
                            p.push(self.ctx.mul(p[e - 1], x));
                        }
                        p
                    })
                    .collect()
            })
            .collect()
    }

    fn specialize(&self, k: usize, input: &[u64], pw: &[u64], out: &mut [u64]) {
        out.iter_mut().for_each(|v| *v = 0);
        for (&c, &(e, o)) in input.iter().zip(&self.levels[k]) {
            if c != 0 {
                let o = o as usize;
                out[o] = self.ctx.add(out[o], self.ctx.mul(c, pw[e as usize]));
            }
        }
    }

    /// Tuples in the enumeration range whose syzygy value vanishes modulo the
    /// scan prime, in enumeration order.
    pub fn scan_range(&self, b: &TupleBox, range: Range<u64>) -> Vec<[i64; 7]> {
        let full = b.full_range(&range);
        if full.is_empty() {
            return Vec::new();
        }
        let origin = b.origin_index();
        let powers = self.powers(b);
        let r8 = b.radix(6);
        let (first_row, last_row) = (full.start / r8, (full.end - 1) / r8);
        let mut bufs: Vec<Vec<u64>> = self.sizes.iter().map(|&s| vec![0; s]).collect();
        bufs[0].copy_from_slice(&self.top);
        let mut digits = [0usize; 7];
        let mut prev: Option<[usize; 7]> = None;
        let mut out = Vec::new();
        let ctx = &self.ctx;
        let x8 = &powers[6];
        for row in first_row..=last_row {
            let mut rem = row;
            for k in (0..6).rev() {
                let r = b.radix(k);
                digits[k] = (rem % r) as usize;
                rem /= r;
            }
            let changed = match prev {
                None => 0,
                Some(p) => (0..6).find(|&k| p[k] != digits[k]).unwrap_or(6),
            };
            for k in changed..6 {
                let (lo, hi) = bufs.split_at_mut(k + 1);
                self.specialize(k, &lo[k], &powers[k][digits[k]], &mut hi[0]);
            }
            prev = Some(digits);
            // bufs[6] holds the polynomial in J8; collapse it to dense coefficients
            let mut coeffs = vec![0u64; self.sizes[7]];
            self.specialize(6, &bufs[6], &vec![ctx.one(); 1 + self.max_exp[6] as usize], &mut coeffs);
            let start = if row == first_row { full.start - row * r8 } else { 0 };
            let end = if row == last_row { full.end - row * r8 } else { r8 };
            for j in start..end {
                if row * r8 + j == origin {
                    continue;
                }
                let x = x8[j as usize][1];
                let mut acc = 0u64;
                for &c in coeffs.iter().rev() {
                    acc = ctx.add(ctx.mul(acc, x), c);
                }
                if acc == 0 {
                    let mut t = [0i64; 7];
                    for k in 0..6 {
                        t[k] = digits[k] as i64 - b.bounds[k];
                    }
                    t[6] = j as i64 - b.bounds[6];
                    out.push(t);
                }
            }
        }
        out
    }

    /// Scans the whole box split into `chunks` contiguous ranges.
    pub fn scan(&self, b: &TupleBox, chunks: usize) -> Vec<[i64; 7]> {
        let parts = b.partitions(chunks);
        par::map_slice(&parts, |r| self.scan_range(b, r.clone()))
            .into_iter()
            .flatten()
            .collect()
    }
}

/// Sizes of the intermediate sets of the pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineCounts {
    pub enumerated: u64,
    pub syzygy_pass: u64,
    pub disc_pass: u64,
    pub minimal: u64,
    pub normalized_unique: u64,
}

/// One normalized absolute minimal tuple of the database.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatabaseRecord {
    pub tuple: WeightedPoint,
    pub height: HeightValue,
    pub disc: BigRational,
    /// Number of tuples of the disc-filtered set that normalize to this one.
    pub sources: u64,
    /// The sign convention needed the graded-lexicographic tie-break.
    pub tie: bool,
}

/// Output of [`build_database`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Database {
    pub height_bound: BigRational,
    pub relations_hash: String,
    pub counts: PipelineCounts,
    pub records: Vec<DatabaseRecord>,
    /// Tuples that passed the syzygy filter, in enumeration order.
    pub syzygy_set: Vec<WeightedPoint>,
    /// Tuples that also passed the discriminant filter.
    pub disc_set: Vec<WeightedPoint>,
}

/// Runs the pipeline for height bound `h` with `workers` threads
/// (0 = default). The result does not depend on `workers`.
pub fn build_database(h: &BigRational, relations: &RelationSet, workers: usize) -> Result<Database> {
    let b = TupleBox::for_height(h)?;
    let scanner = SyzygyScanner::new(relations.syzygy());
    let chunks = 4 * workers.max(1).max(if par::PARALLEL { 16 } else { 1 });
    let candidates = par::with_workers(workers, || scanner.scan(&b, chunks));

    let syzygy_set: Vec<WeightedPoint> = candidates
        .into_iter()
        .map(WeightedPoint::from_i64)
        .filter(|t| relations.syzygy_check(t))
        .collect();
    let disc_set: Vec<WeightedPoint> = syzygy_set.iter().filter(|t| relations.disc_check(t)).cloned().collect();

    let mut minimal: Vec<WeightedPoint> = disc_set.iter().map(minimal_tuple).collect();
    minimal.sort_by(grlex_cmp);
    minimal.dedup();

    let mut groups: BTreeMap<Vec<BigInt>, (WeightedPoint, u64, bool)> = BTreeMap::new();
    for t in &disc_set {
        let (n, tie) = normalize_convention_flagged(&absolute_minimal(&minimal_tuple(t)));
        groups
            .entry(n.coords().to_vec())
            .and_modify(|g| g.1 += 1)
            .or_insert((n, 1, tie));
    }
    let mut records: Vec<DatabaseRecord> = groups
        .into_values()
        .map(|(tuple, sources, tie)| DatabaseRecord {
            height: height(&tuple),
            disc: relations.disc_value(&tuple),
            tuple,
            sources,
            tie,
        })
        .collect();
    records.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| grlex_cmp(&a.tuple, &b.tuple)));

    let counts = PipelineCounts {
        enumerated: b.len(),
        syzygy_pass: syzygy_set.len() as u64,
        disc_pass: disc_set.len() as u64,
        minimal: minimal.len() as u64,
        normalized_unique: records.len() as u64,
    };
    Ok(Database {
        height_bound: h.clone(),
        relations_hash: relations.hash().to_string(),
        counts,
        records,
        syzygy_set,
        disc_set,
    })
}

/// Output file format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            _ => Err(Error::Input(format!("unknown format {s:?} (expected csv or jsonl)"))),
        }
    }
}

/// Metadata written at the top of every output file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub height: String,
    pub relations: String,
    pub version: String,
    pub counts: PipelineCounts,
}

#[derive(Serialize, Deserialize)]
struct RecordLine {
    tuple: WeightedPoint,
    height: String,
    witness: HeightValue,
    disc: String,
    sources: u64,
    tie: bool,
}

impl Database {
    pub fn header(&self) -> Header {
        Header {
            height: format_rational(&self.height_bound),
            relations: self.relations_hash.clone(),
            version: TOOL_VERSION.to_string(),
            counts: self.counts,
        }
    }

    /// Records with height strictly above `bound`.
    pub fn records_above(&self, bound: &BigRational) -> Vec<&DatabaseRecord> {
        self.records.iter().filter(|r| !r.height.leq(bound)).collect()
    }

    pub fn render(&self, format: Format) -> String {
        emit_string(&self.header(), &self.records, format)
    }

    pub fn emit(&self, format: Format, out: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(out)?);
        f.write_all(self.render(format).as_bytes())?;
        f.flush()?;
        Ok(())
    }
}

/// Renders a header and records as CSV or JSON lines.
pub fn emit_string(header: &Header, records: &[DatabaseRecord], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Csv => {
            let c = &header.counts;
            let _ = writeln!(s, "# octavic database");
            let _ = writeln!(s, "# height <= {}", header.height);
            let _ = writeln!(s, "# relations {}", header.relations);
            let _ = writeln!(s, "# version {}", header.version);
            let _ = writeln!(
                s,
                "# counts enumerated={} syzygy={} disc={} minimal={} unique={}",
                c.enumerated, c.syzygy_pass, c.disc_pass, c.minimal, c.normalized_unique
            );
            s.push_str("J2,J3,J4,J5,J6,J7,J8,height,height_witness,disc,sources\n");
            for r in records {
                for c in r.tuple.coords() {
                    let _ = write!(s, "{c},");
                }
                let _ = writeln!(
                    s,
                    "{:.6},|J{}|={},{},{}",
                    r.height.approx(),
                    r.height.index,
                    r.height.magnitude,
                    format_rational(&r.disc),
                    r.sources
                );
            }
        }
        Format::Jsonl => {
            s.push_str(&serde_json::to_string(header).expect("header serializes"));
            s.push('\n');
            for r in records {
                let line = RecordLine {
                    tuple: r.tuple.clone(),
                    height: format!("{:.6}", r.height.approx()),
                    witness: r.height.clone(),
                    disc: format_rational(&r.disc),
                    sources: r.sources,
                    tie: r.tie,
                };
                s.push_str(&serde_json::to_string(&line).expect("record serializes"));
                s.push('\n');
            }
        }
    }
    s
}

/// Reads a JSON-lines database written by [`Database::emit`].
pub fn parse_jsonl(input: impl BufRead) -> Result<(Header, Vec<DatabaseRecord>)> {
    let mut lines = input.lines();
    let first = lines.next().ok_or_else(|| Error::Input("empty database file".into()))??;
    let header: Header = serde_json::from_str(&first)?;
    let mut records = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let r: RecordLine = serde_json::from_str(&line)?;
        records.push(DatabaseRecord {
            tuple: r.tuple,
            height: r.witness,
            disc: parse_rational(&r.disc)?,
            sources: r.sources,
            tie: r.tie,
        });
    }
    Ok((header, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};
    use crate::relations::WeightedMonomial;

    #[test]
    fn box_sizes() {
        let b = TupleBox::for_height(&rat(1)).unwrap();
        assert_eq!(b.len(), 2186);
        assert_eq!(b.tuple_at(0), [-1; 7]);
        assert_eq!(b.tuple_at(2185), [1; 7]);
        assert!(b.iter().all(|t| t != [0; 7]));
        let b = TupleBox::for_height(&rat_frac(3, 2)).unwrap();
        assert_eq!(b.bounds(), [2, 3, 5, 7, 11, 17, 25]);
        assert_eq!(b.len(), 237_092_624);
        assert!(matches!(TupleBox::for_height(&rat_frac(1, 2)), Err(Error::EmptyDomain(_))));
    }

    #[test]
    fn partitions_cover_in_order() {
        let b = TupleBox::new([1, 1, 0, 1, 0, 2, 1]);
        let all: Vec<_> = b.iter().collect();
        for k in [1, 2, 5, 17] {
            let joined: Vec<_> = b.partitions(k).into_iter().flat_map(|r| b.iter_range(r)).collect();
            assert_eq!(joined, all);
        }
    }

    #[test]
    fn scanner_matches_direct_evaluation() {
        // (J2^4 - J4^2)(J8 - J2^4) + J3 J5 J8 / 3 - J7^2 J2, weighted degree 16
        let w = crate::wps::WEIGHTS.to_vec();
        let m = |e: [u32; 7]| WeightedMonomial::new(e.to_vec());
        let p = WeightedPoly::new(
            w,
            16,
            [
                (m([4, 0, 0, 0, 0, 0, 1]), rat(1)),
                (m([8, 0, 0, 0, 0, 0, 0]), rat(-1)),
                (m([0, 0, 2, 0, 0, 0, 1]), rat(-1)),
                (m([4, 0, 2, 0, 0, 0, 0]), rat(1)),
                (m([0, 1, 0, 1, 0, 0, 1]), rat_frac(1, 3)),
                (m([1, 0, 0, 0, 0, 2, 0]), rat(-1)),
            ],
        )
        .unwrap();
        let b = TupleBox::new([2, 1, 2, 1, 1, 1, 3]);
        let direct: Vec<[i64; 7]> = b
            .iter()
            .filter(|t| {
                let x: Vec<BigInt> = t.iter().map(|&v| BigInt::from(v)).collect();
                p.eval_scaled(&x) == BigInt::from(0)
            })
            .collect();
        let s = SyzygyScanner::new(&p);
        assert_eq!(s.scan(&b, 1), direct);
        assert_eq!(s.scan(&b, 7), direct);
        let mid = b.len() / 3;
        let mut split = s.scan_range(&b, 0..mid);
        split.extend(s.scan_range(&b, mid..b.len()));
        assert_eq!(split, direct);
    }

    #[test]
    fn format_parsing() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
