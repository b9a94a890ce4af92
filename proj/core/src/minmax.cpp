// minmax: implementation forthcoming in this translation unit.
