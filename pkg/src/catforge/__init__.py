"""
有限の圏・置換圏・ファイバー圏の構成と公理検査を行うツール
"""

__version__ = "0.1.0"
