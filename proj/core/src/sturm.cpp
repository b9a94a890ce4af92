// sturm: implementation forthcoming in this translation unit.
