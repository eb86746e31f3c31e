import pytest

from rulemine import MiningParams, apriori, datasets


@pytest.fixture(scope="session")
def zoo():
    return datasets.zoo_transactions()


@pytest.fixture(scope="session")
def zoo_rules(zoo):
    """The full low-threshold rule set (support 0.01, confidence 0.7)."""
    return apriori(zoo, MiningParams(support=0.01, confidence=0.7,
                                     minlen=1, maxlen=10))


@pytest.fixture(scope="session")
def zoo_rules_small(zoo):
    """A smaller rule set for structural tests."""
    return apriori(zoo, MiningParams(support=0.05, confidence=0.8))
