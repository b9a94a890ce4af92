// report: implementation forthcoming in this translation unit.
