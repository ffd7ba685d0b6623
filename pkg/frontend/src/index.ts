export { diverging, symmetricMax } from "./colormap.js";
export { FIG1_LAYOUT, MARGINALS_HEADER, renderFigure1 } from "./figure1.js";
export type { FigureSpec } from "./figure1.js";
export { AVG_HEADER, FIG2_LAYOUT, PREDICTABILITY_HEADER, renderFigure2 } from "./figure2.js";
export type { Figure2Spec } from "./figure2.js";
export { decodePixels, encodePng, readChunks, readTextChunks } from "./png.js";
export { BLACK, GRAY, Raster, textWidth, WHITE } from "./raster.js";
export type { Rgb } from "./raster.js";
export { loadCsv, loadWigner, SchemaMismatch, SUPPORTED_SCHEMA } from "./schema.js";
export type { CsvFile, WignerFile } from "./schema.js";
