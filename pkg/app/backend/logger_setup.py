import logging

from config.settings import LOG_FILE, LOG_LEVEL

handlers: list[logging.Handler] = [logging.StreamHandler()]  # Output to stderr
if LOG_FILE:
    handlers.append(logging.FileHandler(LOG_FILE))

# Configure the root logger for every entry point that imports this module
logging.basicConfig(
    level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=handlers,
)
