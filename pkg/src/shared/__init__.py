"""Общие утилиты: ошибки, декораторы, ответы команд, форматеры и пул потоков."""
