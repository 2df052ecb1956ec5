"""
Fixtures compartidas: el fragmento distribuido, el corpus y fábricas de
ítems para las pruebas del motor.
"""
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from app.config.settings import GrammarConfig
from app.domain.feature import FeatureBundle
from app.domain.lexical_item import LexicalItem, Lexicon, MorphClass
from app.infrastructure.corpus_repository import CorpusRepository
from app.infrastructure.recipe_repository import RecipeRepository
from app.services.yia_grammar import derive_clause


@pytest.fixture(scope="session")
def fragment():
    return RecipeRepository(GrammarConfig.LEXICON_FILE, GrammarConfig.RECIPES_FILE).load()


@pytest.fixture(scope="session")
def lexicon(fragment):
    return fragment.lexicon


@pytest.fixture(scope="session")
def records():
    return CorpusRepository(GrammarConfig.CORPUS_FILE).load()


@pytest.fixture(scope="session")
def corpus_by_id(records):
    return {r.id: r for r in records}


@pytest.fixture(scope="session")
def derived(fragment, corpus_by_id):
    """Traza por receta de cada registro del corpus, calculada una vez"""
    cache = {}

    def get(record_id):
        if record_id not in cache:
            record = corpus_by_id[record_id]
            cache[record_id] = derive_clause(fragment, record.clause_type, record.fillers)
        return cache[record_id]

    return get


def build_item(item_id: str, features: str, morph: str = "free", gloss: str = "") -> LexicalItem:
    morph_class = MorphClass(morph)
    return LexicalItem(
        id=item_id,
        phon="" if morph_class is MorphClass.NULL else item_id,
        gloss=gloss or item_id,
        bundle=FeatureBundle.parse(features),
        morph_class=morph_class,
    )


@pytest.fixture
def make_item():
    return build_item


@pytest.fixture
def toy_lexicon():
    """Léxico mínimo: un verbo transitivo, uno intransitivo, v, T y tres nominales"""
    items = [
        build_item("ver", "=D V uperson:3 unumber:sg"),
        build_item("juan", "D -epp? person:3 number:sg gender:m"),
        build_item("maria", "D -epp? person:3 number:sg gender:f"),
        build_item("yo", "D -epp? person:1 number:sg"),
        build_item("v", "=V +hm =D v", morph="null"),
        build_item("T", "=v uperson unumber ugender +hm +epp T", morph="null"),
        build_item("correr", "V"),
    ]
    return Lexicon({i.id: i for i in items})
