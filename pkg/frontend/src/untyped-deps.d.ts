/**
 * Ambient declarations for runtime dependencies that ship without their
 * own type definitions. Only the surface this package touches is typed.
 */

declare module "papaparse" {
  export interface ParseError {
    row?: number;
    message?: string;
  }

  export interface ParseMeta {
    fields?: string[];
  }

  export interface ParseResult<T> {
    data: T[];
    errors: ParseError[];
    meta: ParseMeta;
  }

  export interface ParseConfig {
    header?: boolean;
    delimiter?: string;
    dynamicTyping?: boolean;
    skipEmptyLines?: boolean;
  }

  const Papa: {
    parse<T>(input: string, config?: ParseConfig): ParseResult<T>;
  };
  export default Papa;
}

declare module "yargs" {
  export interface OptionSpec {
    type: "string" | "number" | "boolean";
    default?: unknown;
    describe?: string;
  }

  export interface Parsed {
    _: Array<string | number>;
    [key: string]: unknown;
  }

  export interface Argv {
    scriptName(name: string): Argv;
    command(name: string, description: string): Argv;
    demandCommand(min: number, message: string): Argv;
    option(name: string, spec: OptionSpec): Argv;
    strict(): Argv;
    exitProcess(enabled: boolean): Argv;
    parseSync(): Parsed;
  }

  function yargs(argv: string[]): Argv;
  export default yargs;
}

declare module "yargs/helpers" {
  export function hideBin(argv: string[]): string[];
}
