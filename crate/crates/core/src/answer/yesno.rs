use std::fmt;

use serde::{Deserialize, Serialize};

use crate::conceptlex::{SentimentLexicon, TagClass};
use crate::textproc::{pos_tag, tokenize, TagLexicon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum YesNo {
    Yes,
    No,
}

impl fmt::Display for YesNo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            YesNo::Yes => "yes",
            YesNo::No => "no",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YesNoVote {
    pub answer: YesNo,
    pub positive: usize,
    pub negative: usize,
    /// Sentiment score of each passage, in input order.
    pub scores: Vec<f64>,
    /// No passages were supplied; the answer is the default `yes`.
    pub empty: bool,
}

/// Sum of word sentiment over every token of the passage, each looked up
/// with the coarse class of its POS tag.
pub fn passage_sentiment(passage: &str, sentiment: &SentimentLexicon, tags: &TagLexicon) -> f64 {
    pos_tag(&tokenize(passage), tags)
        .iter()
        .filter(|t| !t.token.is_punct())
        .map(|t| sentiment.word_sentiment(&t.token.surface, TagClass::from_penn(&t.tag)))
        .sum()
}

/// Votes over passages: a passage is positive when its score is `>= 0`, and
/// the answer is `yes` when positives are at least as many as negatives.
pub fn vote(scores: Vec<f64>) -> YesNoVote {
    let positive = scores.iter().filter(|&&s| s >= 0.0).count();
    let negative = scores.len() - positive;
    YesNoVote {
        answer: if positive >= negative {
            YesNo::Yes
        } else {
            YesNo::No
        },
        positive,
        negative,
        empty: scores.is_empty(),
        scores,
    }
}

pub fn answer_yesno<S: AsRef<str>>(
    passages: &[S],
    sentiment: &SentimentLexicon,
    tags: &TagLexicon,
) -> YesNoVote {
    vote(
        passages
            .iter()
            .map(|p| passage_sentiment(p.as_ref(), sentiment, tags))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vote_counts() {
        let v = vote(vec![1.0, -2.0, -3.0]);
        assert_eq!((v.answer, v.positive, v.negative), (YesNo::No, 1, 2));
        let v = vote(vec![0.0, -1.0]);
        assert_eq!(v.answer, YesNo::Yes);
        let v = vote(vec![]);
        assert!(v.empty);
        assert_eq!(v.answer, YesNo::Yes);
    }

    #[test]
    fn passage_scores_sum_words() {
        let lex = SentimentLexicon::parse("s", "good\ta\t0.75\t0\nbad\ta\t0\t0.5\n").unwrap();
        let tags = TagLexicon::bundled();
        assert_eq!(passage_sentiment("good good bad.", &lex, &tags), 1.0);
        let v = answer_yesno(&["bad news", "good news", "bad bad"], &lex, &tags);
        assert_eq!(v.scores, vec![-0.5, 0.75, -1.0]);
        assert_eq!(v.answer, YesNo::No);
    }
}
