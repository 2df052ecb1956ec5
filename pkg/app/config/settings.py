"""
Configuración centralizada del analizador de cláusulas qulk.
Carga variables de entorno y proporciona configuraciones globales.
"""
import logging
import os
from pathlib import Path

from dotenv import load_dotenv

# Cargar variables de entorno desde .env
load_dotenv()

logger = logging.getLogger(__name__)

# Rutas base del proyecto
BASE_DIR = Path(__file__).resolve().parent.parent.parent
APP_DIR = BASE_DIR / "app"
ASSETS_DIR = APP_DIR / "assets"
DATA_DIR = ASSETS_DIR / "data"
LOGS_DIR = BASE_DIR / "logs"
REPORTS_DIR = BASE_DIR / "reportes"

# Crear directorios si no existen
LOGS_DIR.mkdir(exist_ok=True)


class GrammarConfig:
    """Configuración del fragmento gramatical (léxico, recetas, corpus)"""
    LEXICON_FILE = Path(os.getenv("YIA_LEXICON_FILE", str(DATA_DIR / "yia.lexicon")))
    RECIPES_FILE = Path(os.getenv("YIA_RECIPES_FILE", str(DATA_DIR / "yia.recipes")))
    CORPUS_FILE = Path(os.getenv("YIA_CORPUS_FILE", str(DATA_DIR / "yia_corpus.txt")))

    # Valor por defecto para rasgos phi que la meta no especifica (1SG sin género)
    DEFAULT_GENDER = os.getenv("AGREE_DEFAULT_GENDER", "m")
    DEFAULTABLE_PHI = {"gender": DEFAULT_GENDER}

    # Categoría de la raíz de una oración completa (la cláusula matriz es un TP)
    START_CATEGORY = os.getenv("START_CATEGORY", "T")


class SearchConfig:
    """Límites de la búsqueda exhaustiva del parser"""
    MAX_STEPS = int(os.getenv("SEARCH_MAX_STEPS", "40"))
    MAX_NULL_ITEMS = int(os.getenv("SEARCH_MAX_NULL_ITEMS", "10"))
    MAX_NUMERATIONS = int(os.getenv("SEARCH_MAX_NUMERATIONS", "10000"))


class GlossConfig:
    """Configuración de glosas y renderizado en PF"""
    LEIPZIG = os.getenv("GLOSS_LEIPZIG", "True").lower() == "true"
    FUSED_RENDER = os.getenv("FUSED_RENDER", "False").lower() == "true"


class LoggingConfig:
    """Configuración de logging"""
    LEVEL = os.getenv("LOG_LEVEL", "INFO")
    FILE = LOGS_DIR / "app.log"
    FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    CONSOLE_LEVEL = os.getenv("LOG_CONSOLE_LEVEL", "WARNING")


class AppConfig:
    """Configuración general de la aplicación"""
    NAME = os.getenv("APP_NAME", "Analizador de cláusulas qulk (YIA)")
    VERSION = os.getenv("APP_VERSION", "1.0.0")
    DEBUG = os.getenv("DEBUG", "False").lower() == "true"


def validate_config():
    """
    Valida que las configuraciones críticas estén presentes.

    Los archivos del fragmento deben existir y los límites de búsqueda
    deben ser positivos. Las advertencias no bloquean el inicio.
    """
    errors = []
    warnings = []

    for nombre, ruta in (
        ("léxico", GrammarConfig.LEXICON_FILE),
        ("recetas", GrammarConfig.RECIPES_FILE),
    ):
        if not ruta.exists():
            errors.append(
                f"El archivo de {nombre} no existe: {ruta}\n"
                f"  → Revisa la variable de entorno correspondiente en .env"
            )

    if not GrammarConfig.CORPUS_FILE.exists():
        warnings.append(f"Corpus no encontrado: {GrammarConfig.CORPUS_FILE}")

    for nombre, valor in (
        ("SEARCH_MAX_STEPS", SearchConfig.MAX_STEPS),
        ("SEARCH_MAX_NULL_ITEMS", SearchConfig.MAX_NULL_ITEMS),
        ("SEARCH_MAX_NUMERATIONS", SearchConfig.MAX_NUMERATIONS),
    ):
        if valor <= 0:
            errors.append(f"{nombre} debe ser positivo (valor actual: {valor})")

    for warning in warnings:
        logger.warning(f"⚠️ Configuración: {warning}")

    if errors:
        raise ValueError(
            "❌ Configuración inválida del analizador:\n\n"
            + "\n\n".join(f"• {e}" for e in errors)
        )


# Exportar todas las configuraciones
__all__ = [
    "BASE_DIR",
    "APP_DIR",
    "ASSETS_DIR",
    "DATA_DIR",
    "LOGS_DIR",
    "REPORTS_DIR",
    "GrammarConfig",
    "SearchConfig",
    "GlossConfig",
    "LoggingConfig",
    "AppConfig",
    "validate_config",
]
