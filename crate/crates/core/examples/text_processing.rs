//! Tokenize, tag, stem and split a short abstract.

use bioqa::textproc::{pos_tag, split_sentences, stem, tokenize, Abbreviations, TagLexicon};

fn main() {
    let tags = TagLexicon::bundled();
    let q = "Is imatinib an antidepressant drug?";
    for t in pos_tag(&tokenize(q), &tags) {
        println!(
            "{:<14} {:<5} {}",
            t.token.surface,
            t.tag,
            stem(&t.token.surface.to_lowercase())
        );
    }

    let abstract_text = "Muenke syndrome is caused by the FGFR3 p.Pro250Arg mutation. \
Hearing loss was seen in e.g. most patients. Craniosynostosis was variable.";
    println!();
    for s in split_sentences(abstract_text, &Abbreviations::bundled()) {
        println!("[{}..{}] {}", s.start, s.end, s.text);
    }
}
