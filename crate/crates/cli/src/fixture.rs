//! Generator specs shared by `generate` and `--fixture`.
//!
//! A spec is a family name followed by integer parameters, written either
//! as separate words (`paley 13`) or colon-joined (`paley:13`). List
//! parameters are comma separated (`circulant:8:1,3`).

use cyclicity::graph::{
    circulant, complete, complete_bipartite, cycle, paley, path, petersen, random_connected,
    random_tree, star, Graph,
};
use cyclicity::{Error, Result};

pub const FAMILIES: &str = "path N, cycle N, complete N, complete-bipartite A B, star N, \
circulant N J1,J2,.., paley Q, petersen, tree N, random N P";

fn bad(spec: &str, why: impl std::fmt::Display) -> Error {
    Error::InvalidParams(format!("generator `{spec}`: {why}"))
}

fn int(spec: &str, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| bad(spec, format!("expected an integer, got `{tok}`")))
}

/// Splits `paley:13` into `["paley", "13"]`; separate words pass through.
pub fn split_spec(words: &[String]) -> Vec<String> {
    words
        .iter()
        .flat_map(|w| w.split(':').map(str::to_owned).collect::<Vec<_>>())
        .filter(|w| !w.is_empty())
        .collect()
}

/// Builds the graph named by `words`. Random families draw from `seed`.
pub fn build(words: &[String], seed: u64) -> Result<Graph> {
    let parts = split_spec(words);
    let spec = parts.join(" ");
    let (family, args) = parts.split_first().ok_or_else(|| bad(&spec, "empty"))?;
    let want = |k: usize| -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            Err(bad(&spec, format!("expected {k} parameter(s), got {}", args.len())))
        }
    };
    match family.to_ascii_lowercase().as_str() {
        "path" => {
            want(1)?;
            path(int(&spec, &args[0])?)
        }
        "cycle" => {
            want(1)?;
            cycle(int(&spec, &args[0])?)
        }
        "complete" => {
            want(1)?;
            complete(int(&spec, &args[0])?)
        }
        "complete-bipartite" | "bipartite" => {
            let nums: Vec<String> = args.iter().flat_map(|a| a.split(',')).map(str::to_owned).collect();
            if nums.len() != 2 {
                return Err(bad(&spec, "expected two part sizes"));
            }
            complete_bipartite(int(&spec, &nums[0])?, int(&spec, &nums[1])?)
        }
        "star" => {
            want(1)?;
            star(int(&spec, &args[0])?)
        }
        "circulant" => {
            let (n, jumps) = args.split_first().ok_or_else(|| bad(&spec, "missing order"))?;
            let jumps = jumps
                .iter()
                .flat_map(|a| a.split(','))
                .filter(|s| !s.is_empty())
                .map(|s| int(&spec, s))
                .collect::<Result<Vec<_>>>()?;
            circulant(int(&spec, n)?, &jumps)
        }
        "paley" => {
            want(1)?;
            let q: u64 = args[0]
                .parse()
                .map_err(|_| bad(&spec, format!("expected an integer, got `{}`", args[0])))?;
            paley(q)
        }
        "petersen" => {
            want(0)?;
            Ok(petersen())
        }
        "tree" => {
            want(1)?;
            random_tree(int(&spec, &args[0])?, seed)
        }
        "random" => {
            want(2)?;
            let p: f64 = args[1]
                .parse()
                .map_err(|_| bad(&spec, format!("expected a probability, got `{}`", args[1])))?;
            random_connected(int(&spec, &args[0])?, p, seed)
        }
        other => Err(bad(&spec, format!("unknown family `{other}`; known: {FAMILIES}"))),
    }
}
