//! Regular English inflection: candidate lemmas for an inflected word and
//! the regular inflections of a lemma.

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

fn ends_with_doubled_consonant(s: &str) -> bool {
    let mut it = s.chars().rev();
    match (it.next(), it.next()) {
        (Some(a), Some(b)) => a == b && a.is_ascii_alphabetic() && !is_vowel(a),
        _ => false,
    }
}

/// Possible base forms of `word` by undoing a regular `-s`, `-ing` or `-ed`
/// suffix, most likely first. The word itself is not included.
pub fn lemma_candidates(word: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut add = |s: &str| {
        if s.len() >= 2 && s != word && !out.iter().any(|o| o == s) {
            out.push(s.to_string());
        }
    };
    let n = word.len();
    if let Some(stem) = word.strip_suffix("ing").filter(|_| n >= 5) {
        add(stem);
        add(&format!("{stem}e"));
        if ends_with_doubled_consonant(stem) {
            add(&stem[..stem.len() - 1]);
        }
        if let Some(s) = stem.strip_suffix('y') {
            add(&format!("{s}ie"));
        }
    }
    if let Some(stem) = word.strip_suffix("ied").filter(|_| n >= 5) {
        add(&format!("{stem}y"));
    }
    if let Some(stem) = word.strip_suffix("ed").filter(|_| n >= 4) {
        add(stem);
        add(&format!("{stem}e"));
        if ends_with_doubled_consonant(stem) {
            add(&stem[..stem.len() - 1]);
        }
    }
    if let Some(stem) = word.strip_suffix("ies").filter(|_| n >= 5) {
        add(&format!("{stem}y"));
    }
    if !word.ends_with("ss") && !word.ends_with("us") && !word.ends_with("is") {
        if let Some(stem) = word.strip_suffix("es").filter(|_| n >= 4) {
            add(stem);
        }
        if let Some(stem) = word.strip_suffix('s').filter(|_| n >= 3) {
            add(stem);
        }
    }
    out
}

/// Short consonant-vowel-consonant words double their final consonant
/// before `-ed`/`-ing` (stop -> stopped).
fn doubles_final(lemma: &str) -> bool {
    let c: Vec<char> = lemma.chars().collect();
    let n = c.len();
    (3..=4).contains(&n)
        && !is_vowel(c[n - 1])
        && !matches!(c[n - 1], 'w' | 'x' | 'y')
        && is_vowel(c[n - 2])
        && !is_vowel(c[n - 3])
}

pub fn plural(lemma: &str) -> String {
    if ["s", "x", "z", "ch", "sh"].iter().any(|s| lemma.ends_with(s)) {
        format!("{lemma}es")
    } else if lemma.ends_with('y') && !lemma.ends_with("ay") && !lemma.ends_with("ey") && !lemma.ends_with("oy") && !lemma.ends_with("uy") {
        format!("{}ies", &lemma[..lemma.len() - 1])
    } else {
        format!("{lemma}s")
    }
}

pub fn past(lemma: &str) -> String {
    if lemma.ends_with('e') {
        format!("{lemma}d")
    } else if lemma.ends_with('y') && !lemma.ends_with("ay") && !lemma.ends_with("ey") && !lemma.ends_with("oy") {
        format!("{}ied", &lemma[..lemma.len() - 1])
    } else if doubles_final(lemma) {
        format!("{lemma}{}ed", &lemma[lemma.len() - 1..])
    } else {
        format!("{lemma}ed")
    }
}

pub fn progressive(lemma: &str) -> String {
    if let Some(s) = lemma.strip_suffix("ie") {
        format!("{s}ying")
    } else if lemma.ends_with('e') && !lemma.ends_with("ee") && lemma.len() > 2 {
        format!("{}ing", &lemma[..lemma.len() - 1])
    } else if doubles_final(lemma) {
        format!("{lemma}{}ing", &lemma[lemma.len() - 1..])
    } else {
        format!("{lemma}ing")
    }
}

/// True if `word` is exactly a regular inflection of `lemma`.
pub fn is_regular_inflection(word: &str, lemma: &str) -> bool {
    word == plural(lemma) || word == past(lemma) || word == progressive(lemma)
}
