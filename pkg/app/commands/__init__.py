# app/commands/__init__.py

# Subcomandos del CLI; cada módulo expone add_parser() y handle()
