use std::fs;
use std::io::{self, Write};
use std::path::Path;

use graphlim::cumulant::LambdaVector;
use graphlim::graph::{generate, parse_graph, EdgeLabeledMultigraph, Family, SimpleGraph};
use graphlim::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{GraphArgs, LambdaArgs};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_graph(args: &GraphArgs) -> Result<(String, SimpleGraph)> {
    match (&args.graph, &args.family) {
        (Some(path), _) => Ok((path.display().to_string(), parse_graph(&read(path)?)?)),
        (None, Some(spec)) => {
            let family: Family = spec.parse()?;
            Ok((family.to_string(), generate(&family)?))
        }
        (None, None) => Err(Error::InvalidParameter("give --graph FILE or --family SPEC".into())),
    }
}

/// An existing file is read as an edge list; anything else as a family spec.
pub fn graph_from_spec(spec: &str) -> Result<(String, SimpleGraph)> {
    let path = Path::new(spec);
    if path.is_file() {
        Ok((spec.to_string(), parse_graph(&read(path)?)?))
    } else {
        let family: Family = spec
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{spec:?} is neither a readable file nor a family spec")))?;
        Ok((family.to_string(), generate(&family)?))
    }
}

/// Lambdas from files, then seeded random draws from `[-cap, cap]`.
pub fn load_lambdas(args: &LambdaArgs, k: Option<usize>) -> Result<Vec<LambdaVector>> {
    let mut out = Vec::new();
    for path in &args.lambda {
        let l = LambdaVector::from_json(&read(path)?)?;
        if let Some(k) = k.filter(|&k| k != l.k) {
            return Err(Error::InvalidParameter(format!(
                "{} has k = {} but --k {k} was given",
                path.display(),
                l.k
            )));
        }
        out.push(l);
    }
    if let Some(seed) = args.random_seed {
        let k = k.ok_or_else(|| Error::InvalidParameter("random lambdas need --k".into()))?;
        if !(args.cap > 0.0 && args.cap.is_finite()) {
            return Err(Error::InvalidParameter(format!("--cap must be positive, got {}", args.cap)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        out.extend((0..args.samples).map(|_| LambdaVector::random(k, args.cap, &mut rng)));
    }
    Ok(out)
}

/// `"0-1,1-1"` as a color-pair sequence.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let bad = || Error::InvalidParameter(format!("bad color pair {item:?} (expected i-j)"));
            let (a, b) = item.split_once('-').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

/// `"3:0-1,1-2"` as a labeled multigraph.
pub fn parse_multigraph(text: &str) -> Result<EdgeLabeledMultigraph> {
    let bad = || Error::InvalidParameter(format!("bad pattern {text:?} (expected n:u-v,...)"));
    let (n, edges) = text.split_once(':').ok_or_else(bad)?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    EdgeLabeledMultigraph::new(n, parse_pairs(edges)?)
}

/// `"10..40"` (inclusive) or `"10,12,20"`.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidParameter(format!("bad size list {text:?} (expected A..B or a,b,c)"));
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        Ok((a..=b).collect())
    } else {
        text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
    }
}

/// Writes to stdout, or to `path` through a temporary file and a rename.
pub fn emit(path: Option<&Path>, doc: &str) -> io::Result<()> {
    match path {
        None => {
            let mut out = io::stdout().lock();
            out.write_all(doc.as_bytes())?;
            out.flush()
        }
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(format!(".tmp{}", std::process::id()));
            fs::write(&tmp, doc)?;
            fs::rename(&tmp, path)
        }
    }
}
