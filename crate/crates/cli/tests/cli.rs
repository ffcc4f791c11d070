use std::path::PathBuf;
use std::process::Command;

use refclass::{Interval, TraceDocument};
use refclass_cli::{
    run, EXIT_BAD_QUERY, EXIT_INCONSISTENT, EXIT_OK, EXIT_PARSE, EXIT_TOO_MANY_CANDIDATES,
    EXIT_USAGE,
};

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.rkb"))
        .display()
        .to_string()
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn refclass(args: &[&str]) -> Output {
    refclass_with_limit(args, None)
}

fn refclass_with_limit(args: &[&str], limit: Option<&str>) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("refclass").chain(args.iter().copied());
    let code = run(argv, limit, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write_kb(dir: &tempfile::TempDir, text: &str) -> String {
    let path = dir.path().join("kb.rkb");
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn query_outputs() {
    let o = refclass(&["query", &corpus("urn_a"), "b18 in Black", "--decimal"]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "4/5 (0.8)\n"));

    let o = refclass(&[
        "query",
        &corpus("urn_compound"),
        "c18 in BlackDraw",
        "--decimal",
    ]);
    assert_eq!(o.stdout, "41/55 (≈0.74545)\n");

    let o = refclass(&["query", &corpus("nixon"), "nixon in Pacifist"]);
    assert_eq!(o.stdout, "[1/5, 9/10]\n");
    assert!(o.stderr.is_empty());
}

#[test]
fn query_output_parses_back_to_the_verdict() {
    for (name, query, expected) in [
        ("urn_compound", "c18 in BlackDraw", "41/55"),
        ("nixon", "nixon in Pacifist", "[1/5, 9/10]"),
        ("no_stats", "b18 in Black", "[0, 1]"),
    ] {
        let o = refclass(&["query", &corpus(name), query, "--decimal"]);
        let exact = o.stdout.split(" (").next().unwrap().trim();
        let parsed: Interval = exact.parse().unwrap();
        assert_eq!(parsed, expected.parse::<Interval>().unwrap());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["explain", &corpus("coin"), "me in NotChocolate"];
    let first = refclass(&args);
    for _ in 0..5 {
        assert_eq!(refclass(&args).stdout, first.stdout);
    }
}

#[test]
fn trace_file_rederives() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.json");
    let o = refclass(&[
        "query",
        &corpus("urn_compound"),
        "b18 in Black",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK);
    let text = std::fs::read_to_string(&trace).unwrap();
    assert!(text.contains("\"41/55\""));
    let doc = TraceDocument::from_json(&text).unwrap();
    assert_eq!(doc.schema_version, 1);
    assert_eq!(doc.rederive().unwrap(), "41/55".parse().unwrap());
    assert!(doc.edges.iter().any(|e| e.principle.name() == "bayes"));
}

#[test]
fn explain_shows_defeats() {
    let o = refclass(&["explain", &corpus("tweety_penguin"), "tweety in Flier"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o
        .stdout
        .contains("Penguin defeats Bird by Subset Principle (witness: subset Penguin Bird)"));
    assert!(o.stdout.ends_with("verdict: 1/100\n"));

    let o = refclass(&["explain", &corpus("nixon"), "nixon in Pacifist"]);
    assert!(o
        .stdout
        .contains("no defeats; verdict is cover of survivors"));

    let o = refclass(&["explain", &corpus("single_stat"), "b18 in Black"]);
    assert!(o.stdout.contains("[0] b18 in Black via Room: 1/2"));
    assert!(!o.stdout.contains("[1]"));
    assert!(o.stdout.contains("no defeats"));
}

#[test]
fn check_command() {
    let o = refclass(&["check", &corpus("urn_compound")]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert!(o.stdout.contains("0 violations"));

    let o = refclass(&["check", &corpus("nixon")]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stderr.starts_with("warning:"));

    let dir = tempfile::tempdir().unwrap();
    let corrupted = std::fs::read_to_string(corpus("urn_compound"))
        .unwrap()
        .replace("stat Black Urn3 = 4/5", "stat Black Urn3 = 1/2");
    let o = refclass(&["check", &write_kb(&dir, &corrupted)]);
    assert_eq!(o.code, EXIT_INCONSISTENT);
    assert!(o.stdout.contains("stat Black Urn3 = 1/2"), "{}", o.stdout);
    assert!(o.stdout.contains("4/5"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    let o = refclass(&[
        "query",
        &write_kb(&dir, "class A\nstat A A = 2\n"),
        "x in A",
    ]);
    assert_eq!(o.code, EXIT_PARSE);
    assert!(o.stderr.contains(":2:"), "{}", o.stderr);

    let o = refclass(&["query", &write_kb(&dir, "class A\nmember x A\n"), "x in A"]);
    assert_eq!(o.code, EXIT_PARSE);

    let cyclic = "class A B\nsubset A B\nsubset B A\n";
    let o = refclass(&["query", &write_kb(&dir, cyclic), "x in A"]);
    assert_eq!(o.code, EXIT_INCONSISTENT);

    let conflicting = "class A B\nstat A B = 1/2\nstat A B = 1/3\n";
    let o = refclass(&["explain", &write_kb(&dir, conflicting), "x in A"]);
    assert_eq!(o.code, EXIT_INCONSISTENT);

    let o = refclass(&["query", &corpus("nixon"), "ghost in Pacifist"]);
    assert_eq!(o.code, EXIT_BAD_QUERY);
    assert!(o.stderr.contains("ghost"));
    let o = refclass(&["query", &corpus("nixon"), "nixon is Pacifist"]);
    assert_eq!(o.code, EXIT_BAD_QUERY);

    let o = refclass(&["query", "/nonexistent/kb.rkb", "x in A"]);
    assert_eq!(o.code, EXIT_PARSE);

    let o = refclass(&["frobnicate"]);
    assert_eq!(o.code, EXIT_USAGE);
    let o = refclass(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("query"));
}

#[test]
fn candidate_limit() {
    let args = ["query", &corpus("tweety_flying_penguin"), "tweety in Flier"];
    let o = refclass_with_limit(&args, Some("2"));
    assert_eq!(o.code, EXIT_TOO_MANY_CANDIDATES);
    assert!(o.stderr.contains("3 candidates"));
    assert_eq!(refclass_with_limit(&args, Some("3")).code, EXIT_OK);
    assert_eq!(refclass_with_limit(&args, Some("lots")).code, EXIT_USAGE);
}

#[test]
fn binary_reads_limit_from_environment() {
    let bin = env!("CARGO_BIN_EXE_refclass");
    let status = Command::new(bin)
        .args(["query", &corpus("nixon"), "nixon in Pacifist"])
        .env("REFCLASS_MAX_CANDIDATES", "1")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_TOO_MANY_CANDIDATES));

    let output = Command::new(bin)
        .args(["query", &corpus("nixon"), "nixon in Pacifist"])
        .env_remove("REFCLASS_MAX_CANDIDATES")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(output.stdout).unwrap(), "[1/5, 9/10]\n");
}

fn book_chapter() -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../book/src/cli.md");
    std::fs::read_to_string(path).unwrap()
}

/// The transcripts in the command-line chapter are real output.
#[test]
fn book_transcripts_match() {
    let chapter = book_chapter();
    let mut checked = 0;
    for block in chapter.split("```text\n").skip(1) {
        let block = block.split("```").next().unwrap();
        for entry in block.split("$ refclass ").skip(1) {
            let (command, expected) = entry.split_once('\n').unwrap();
            let args = shell_words(command);
            let args: Vec<String> = args
                .into_iter()
                .map(|a| match a.strip_prefix("corpus/") {
                    Some(name) => corpus(name.trim_end_matches(".rkb")),
                    None => a,
                })
                .collect();
            let args: Vec<&str> = args.iter().map(String::as_str).collect();
            let o = refclass(&args);
            assert_eq!(o.stdout, expected, "refclass {command}");
            checked += 1;
        }
    }
    assert_eq!(checked, 4);
}

/// Every row of the corpus table gives the verdict it lists.
#[test]
fn book_corpus_table_matches() {
    let chapter = book_chapter();
    let rows: Vec<Vec<&str>> = chapter
        .lines()
        .filter(|l| l.starts_with("| `") && l.contains(".rkb"))
        .map(|l| {
            l.trim_matches('|')
                .split('|')
                .map(|cell| cell.trim().trim_matches('`'))
                .collect()
        })
        .collect();
    let on_disk = std::fs::read_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus"))
        .unwrap()
        .count();
    assert_eq!(rows.len(), on_disk);
    for row in rows {
        let [file, query, verdict] = row[..] else {
            panic!("bad row {row:?}")
        };
        let o = refclass(&["query", &corpus(file.trim_end_matches(".rkb")), query]);
        assert_eq!(o.stdout.trim_end(), verdict, "{file}");
    }
}

fn shell_words(line: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut current = String::new();
    let mut quoted = false;
    for c in line.chars() {
        match c {
            '"' => quoted = !quoted,
            ' ' if !quoted => {
                if !current.is_empty() {
                    words.push(std::mem::take(&mut current));
                }
            }
            _ => current.push(c),
        }
    }
    if !current.is_empty() {
        words.push(current);
    }
    words
}
