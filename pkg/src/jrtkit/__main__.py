from ._cli import main_entry

main_entry()
