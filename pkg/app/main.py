"""
Punto de entrada del analizador: configura el logging, valida la
configuración y delega en la línea de comandos.
"""
import sys
import logging
from pathlib import Path

# Configuracion del path para las importaciones
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.config.settings import LoggingConfig, AppConfig, validate_config
from app.presentation.cli import INPUT_ERROR, cli


def setup_logging():
    """Configura el sistema de logging: archivo completo, consola solo avisos"""
    console = logging.StreamHandler()
    console.setLevel(getattr(logging, LoggingConfig.CONSOLE_LEVEL))

    logging.basicConfig(
        level=getattr(logging, LoggingConfig.LEVEL),
        format=LoggingConfig.FORMAT,
        handlers=[
            logging.FileHandler(LoggingConfig.FILE, encoding='utf-8'),
            console
        ]
    )
    logger = logging.getLogger(__name__)

    logger.info("=" * 60)
    logger.info(f"Iniciando {AppConfig.NAME} v{AppConfig.VERSION}")
    logger.info("=" * 60)
    return logger


def main(argv=None):
    """Función principal; devuelve el código de salida"""
    logger = setup_logging()

    try:
        validate_config()
    except ValueError as e:
        logger.error(str(e))
        print(f"Error: {e}", file=sys.stderr)
        return INPUT_ERROR

    try:
        cli.main(args=argv, prog_name="qulk")
    except SystemExit as e:
        exit_code = e.code if isinstance(e.code, int) else (0 if e.code is None else 1)
        logger.info(f"Finalizado con código: {exit_code}")
        return exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
