"""Trainable models: ridge regression, multinomial logistic classification,
and a CART random forest in regression and classification modes."""

from .forest import (
    Forest,
    ForestConfig,
    Tree,
    TreeNode,
    forest_fit,
    forest_predict,
    forest_predict_proba,
)
from .linear import (
    LinearModel,
    LogisticModel,
    logistic_fit,
    logistic_loss_grad,
    logistic_predict_proba,
    ridge_fit,
    ridge_predict,
)

LEARNER_TYPES = ("ridge", "logistic", "random_forest")

__all__ = [
    "Forest",
    "ForestConfig",
    "Tree",
    "TreeNode",
    "forest_fit",
    "forest_predict",
    "forest_predict_proba",
    "LinearModel",
    "LogisticModel",
    "logistic_fit",
    "logistic_loss_grad",
    "logistic_predict_proba",
    "ridge_fit",
    "ridge_predict",
    "LEARNER_TYPES",
]
