"""sentimen: a from-scratch three-class sentiment toolkit for marketplace reviews.

Library layers (each usable on its own):

* :mod:`sentimen.corpus`       CSV ingestion, normalization, seeded splits
* :mod:`sentimen.features`     capped uni+bigram TF-IDF vectors
* :mod:`sentimen.models`       weighted logistic regression, one-vs-rest SVM,
  multinomial Naive Bayes
* :mod:`sentimen.metrics`      confusion matrix, macro/weighted F1 reports
* :mod:`sentimen.persistence`  versioned model envelopes
* :mod:`sentimen.service`      HTTP inference service
* :mod:`sentimen.cli`          the ``sentimen`` command
"""

from .corpus import (
    CLASS_NAMES,
    DatasetSplit,
    RawRecord,
    Review,
    SentimentLabel,
    clean_corpus,
    load_csv,
    map_label,
    preprocess_text,
    stratified_split,
)
from .features import (
    FeatureConfig,
    SparseVector,
    Vocabulary,
    extract_ngrams,
    fit_vocabulary,
    tokenize,
    transform,
    transform_corpus,
)
from .metrics import (
    ConfusionMatrix,
    EvalReport,
    compute_report,
    confusion_matrix,
    format_comparison,
)
from .models import (
    ClassWeights,
    LogRegModel,
    NbModel,
    SvmModel,
    TrainConfig,
    compute_class_weights,
    explain_linear,
    predict_logreg,
    predict_nb,
    predict_svm,
    train_logreg,
    train_nb,
    train_svm_ovr,
)
from .persistence import load_model, save_model
from .service import predict_document, start_service

__version__ = "0.1.0"
