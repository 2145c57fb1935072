"""Incremental fault-tolerant flat parsing of transcribed spontaneous speech."""

from .caseframe import Frame, FrameConfig, UtteranceAnalysis
from .channel import CategoryChannel, TaggedWord, train_channel
from .chunker import Chunker, PhraseGroup, chunk
from .corpus import AnnotatedUtterance, Metrics, evaluate, load_corpus
from .correction import RepairEvent, RepairKind
from .lexicon import ABSTRACT, BASIC, CategoryInventory, Lexicon, Token, TokenKind, tokenize
from .pipeline import Hypothesis, Pipeline, Stage
from .srn import SrnModel, TrainConfig

__version__ = "0.1.0"

__all__ = [
    "ABSTRACT", "BASIC", "AnnotatedUtterance", "CategoryChannel", "CategoryInventory",
    "Chunker", "Frame", "FrameConfig", "Hypothesis", "Lexicon", "Metrics", "PhraseGroup",
    "Pipeline", "RepairEvent", "RepairKind", "SrnModel", "Stage", "TaggedWord", "Token",
    "TokenKind", "TrainConfig", "UtteranceAnalysis", "chunk", "evaluate", "load_corpus",
    "tokenize", "train_channel",
]
