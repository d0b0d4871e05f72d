use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::time::Duration;

use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pictopipe_core::gec::{
    apply_edits, correct, correct_rules, diff_edits, EditCategory, GecBackend, GecConfig,
    GecResult, GecRuleSet,
};

const GEC_PAIRS: &str = include_str!("../data/eval/gec_pairs.tsv");
const DICTIONARY: &str = include_str!("../data/gec/spelling_dictionary.txt");
const IRREGULAR: &str = include_str!("../data/gec/irregular_past.tsv");

fn rules() -> GecRuleSet {
    GecRuleSet::bundled()
}

fn check_edits(source: &str, r: &GecResult) {
    assert_eq!(apply_edits(source, &r.edits), r.corrected, "replay of {source:?}");
    for w in r.edits.windows(2) {
        assert!(w[0].end <= w[1].start, "overlapping edits for {source:?}: {:?}", r.edits);
    }
    for e in &r.edits {
        assert_eq!(&source[e.start..e.end], e.original);
    }
}

#[test]
fn bundled_correction_pairs() {
    let rules = rules();
    for line in GEC_PAIRS.lines() {
        let (src, want) = line.split_once('\t').unwrap();
        let r = correct_rules(src, &rules);
        assert_eq!(r.corrected, want);
        assert_eq!(r.backend, GecBackend::Rules);
        check_edits(src, &r);
        assert_eq!(correct_rules(&r.corrected, &rules).corrected, r.corrected);
    }
}

#[test]
fn lovedd_bts_and_passthrough() {
    let rules = rules();
    assert_eq!(correct_rules("I lovedd BTS", &rules).corrected, "I love BTS");
    let r = correct_rules("I love BTS", &rules);
    assert_eq!(r.corrected, "I love BTS");
    assert!(r.edits.is_empty());
}

#[test]
fn categories_are_recorded() {
    let r = correct_rules("Do I can eat a pizza?", &rules());
    assert!(r.edits.iter().all(|e| e.category == EditCategory::ModalFronting));
    let r = correct_rules("He taked my toy!", &rules());
    assert_eq!(r.edits.len(), 1);
    assert_eq!(r.edits[0].category, EditCategory::IrregularPast);
    assert_eq!((r.edits[0].original.as_str(), r.edits[0].replacement.as_str()), ("taked", "took"));
}

fn fuzz_sentence(rng: &mut ChaCha8Rng, dict: &[&str], irregular: &[&str]) -> String {
    const STRUCTURAL: &[&str] = &[
        "is", "are", "do", "does", "can", "will", "a", "an", "the", "play", "plays", "love",
        "want", "to", "baseball", "soccer", "friends", "toys", "I", "he", "she",
    ];
    let n = rng.random_range(1..=9);
    let mut words: Vec<String> = Vec::new();
    for _ in 0..n {
        let mut w = match rng.random_range(0..10) {
            0..=3 => dict.choose(rng).unwrap().to_string(),
            4..=6 => STRUCTURAL.choose(rng).unwrap().to_string(),
            7 => irregular.choose(rng).unwrap().to_string(),
            _ => {
                // a single random edit of a dictionary word
                let mut c: Vec<char> = dict.choose(rng).unwrap().chars().collect();
                let i = rng.random_range(0..c.len());
                match rng.random_range(0..3) {
                    0 => {
                        c.remove(i);
                    }
                    1 => c.insert(i, (b'a' + rng.random_range(0..26)) as char),
                    _ => c[i] = (b'a' + rng.random_range(0..26)) as char,
                }
                c.into_iter().collect()
            }
        };
        if rng.random_bool(0.1) {
            w = w.to_uppercase();
        }
        words.push(w);
    }
    let mut s = words.join(" ");
    if rng.random_bool(0.5) {
        let mut c = s.chars();
        s = c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default();
    }
    if rng.random_bool(0.5) {
        s.push(*['?', '!', '.'].choose(rng).unwrap());
    }
    s
}

#[test]
fn thousand_fuzzed_sentences_are_idempotent_and_faithful() {
    let rules = rules();
    let dict: Vec<&str> = DICTIONARY.lines().filter(|l| !l.is_empty()).collect();
    let irregular: Vec<&str> = IRREGULAR.lines().filter_map(|l| l.split('\t').next()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    for _ in 0..1000 {
        let s = fuzz_sentence(&mut rng, &dict, &irregular);
        let once = correct_rules(&s, &rules);
        check_edits(&s, &once);
        let twice = correct_rules(&once.corrected, &rules);
        assert_eq!(twice.corrected, once.corrected, "not idempotent on {s:?}");
    }
}

#[test]
fn clean_sentences_pass_through() {
    // words that can trigger a structural rule are left out
    const TRIGGERS: &[&str] = &[
        "is", "are", "was", "were", "am", "be", "been", "being", "has", "have", "had", "do",
        "does", "did", "can", "could", "will", "would", "shall", "should", "may", "might", "must",
        "a", "an", "the", "play", "plays", "played", "playing",
    ];
    let rules = rules();
    let infinitive: Vec<&str> = include_str!("../data/gec/infinitive_verbs.txt").lines().collect();
    let dict: Vec<&str> = DICTIONARY
        .lines()
        .filter(|w| !w.is_empty() && !TRIGGERS.contains(w))
        .filter(|w| !infinitive.iter().any(|v| w.starts_with(v)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let n = rng.random_range(1..=8);
        let words: Vec<&str> = (0..n).map(|_| *dict.choose(&mut rng).unwrap()).collect();
        let s = words.join(" ");
        let r = correct_rules(&s, &rules);
        assert_eq!(r.corrected, s);
        assert!(r.edits.is_empty(), "{s:?} -> {:?}", r.edits);
    }
}

proptest! {
    #[test]
    fn diff_replays_exactly(a in "[a-z ]{0,30}[!?]?", b in "[a-z ]{0,30}[!?]?") {
        let edits = diff_edits(&a, &b);
        prop_assert_eq!(apply_edits(&a, &edits), b);
        for w in edits.windows(2) {
            prop_assert!(w[0].end <= w[1].start);
        }
    }

    #[test]
    fn rules_never_panic_and_stay_faithful(s in "\\PC{0,40}") {
        let r = correct_rules(&s, &GecRuleSet::bundled());
        prop_assert_eq!(apply_edits(&s, &r.edits), r.corrected);
    }
}

/// Serves `count` HTTP requests, answering each with `status` and `body`.
fn one_shot_server(status: u16, body: &'static str, count: usize) -> String {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    std::thread::spawn(move || {
        for stream in listener.incoming().take(count) {
            let mut stream = stream.unwrap();
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut len = 0usize;
            loop {
                let mut line = String::new();
                reader.read_line(&mut line).unwrap();
                if line == "\r\n" || line.is_empty() {
                    break;
                }
                if let Some(v) = line.to_ascii_lowercase().strip_prefix("content-length:") {
                    len = v.trim().parse().unwrap();
                }
            }
            let mut buf = vec![0; len];
            reader.read_exact(&mut buf).unwrap();
            let request: serde_json::Value = serde_json::from_slice(&buf).unwrap();
            assert!(request["text"].is_string());
            write!(
                stream,
                "HTTP/1.1 {status} X\r\ncontent-type: application/json\r\ncontent-length: {}\r\nconnection: close\r\n\r\n{body}",
                body.len()
            )
            .unwrap();
        }
    });
    format!("http://{addr}/correct")
}

#[test]
fn external_backend_success() {
    let url = one_shot_server(200, r#"{"corrected":"I love to play baseball"}"#, 1);
    let cfg = GecConfig::External {
        endpoint: url,
        timeout: Duration::from_secs(5),
    };
    let src = "I love play the baseball";
    let r = correct(src, &rules(), &cfg);
    assert_eq!(r.backend, GecBackend::External);
    assert_eq!(r.fallback, None);
    assert_eq!(r.corrected, "I love to play baseball");
    check_edits(src, &r);
}

#[test]
fn external_backend_failures_fall_back() {
    let url = one_shot_server(500, "{}", 1);
    let cfg = GecConfig::External {
        endpoint: url,
        timeout: Duration::from_secs(5),
    };
    let r = correct("He taked my toy!", &rules(), &cfg);
    assert_eq!(r.backend, GecBackend::Rules);
    assert_eq!(r.corrected, "He took my toy!");
    assert!(r.fallback.unwrap().contains("500"));

    let url = one_shot_server(200, r#"{"fixed":"nope"}"#, 1);
    let cfg = GecConfig::External {
        endpoint: url,
        timeout: Duration::from_secs(5),
    };
    let r = correct("I lovedd BTS", &rules(), &cfg);
    assert_eq!((r.backend, r.corrected.as_str()), (GecBackend::Rules, "I love BTS"));
    assert!(r.fallback.is_some());
}
