class DataError(Exception):
    """Input data or configuration is malformed; message carries file/row context."""
